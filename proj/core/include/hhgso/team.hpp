#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hhgso/search_core.hpp"

namespace hhgso::team {

struct Expert {
    int id = 0;
    std::string name;
    std::vector<std::string> skills; // sorted, deduplicated
};

/// Immutable expert pool with a skill -> expert-ids index.
struct ExpertPool {
    std::vector<Expert> experts; // ids dense 0..n-1
    std::map<std::string, std::vector<int>> skill_index; // ids sorted ascending

    std::size_t size() const { return experts.size(); }
    std::size_t distinct_skill_count() const { return skill_index.size(); }
};

/// Reads the normalized dataset format: one expert per line,
/// `name<TAB>skill;skill;...`, UTF-8, blank lines skipped, duplicate names
/// allowed (they get distinct ids), skills deduplicated per expert.
/// Throws ParseError (with the line number) for a line without skills and
/// std::invalid_argument for an input with no experts at all.
ExpertPool load_expert_pool(std::istream& in);

/// Best-effort normalizer for the loose `name: skill, skill` (or `;`) colon
/// variants; tab-separated lines pass through. Writes the normalized format;
/// returns the number of experts written. Throws ParseError on lines it
/// cannot interpret.
std::size_t convert_dataset(std::istream& in, std::ostream& out);

/// Jaccard-distance interaction cost between two skill sets:
/// 1 - |a intersect b| / |a union b|, symmetric, in [0, 1]. The sets must be
/// sorted and at least one must be non-empty (both empty is undefined and
/// throws std::invalid_argument).
double interaction_cost(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// Sum of pairwise interaction costs over the (deduplicated) members; 0 for
/// teams of size <= 1. Throws std::invalid_argument for an unknown id.
double team_cost(const std::set<int>& members, const ExpertPool& pool);

struct Team {
    std::set<int> members;
    double cost = 0.0;
};

/// One instance of the cover-all-skills problem: the pool, the required
/// skills (in request order) and, per skill, the candidate expert ids.
class TeamInstance {
  public:
    /// Throws std::invalid_argument if a required skill has no candidate or
    /// the skill list is empty (after deduplication, first occurrence wins).
    TeamInstance(std::shared_ptr<const ExpertPool> pool,
                 std::vector<std::string> required_skills);

    const ExpertPool& pool() const { return *pool_; }
    const std::vector<std::string>& required_skills() const { return required_skills_; }
    const std::vector<std::vector<int>>& candidates() const { return candidates_; }

  private:
    std::shared_ptr<const ExpertPool> pool_;
    std::vector<std::string> required_skills_;
    std::vector<std::vector<int>> candidates_; // per required skill, sorted ids
};

/// Position decoding: component d selects candidates()[d][floor(x_d)]
/// (saturated into the candidate range); the team is the deduplicated union
/// of the selections, so every decoded team covers all required skills by
/// construction.
Team decode(std::span<const double> position, const TeamInstance& instance);

/// Minimizing objective over [0, |candidates_d| - 1e-9]^k evaluating
/// team_cost(decode(position)). The instance must outlive the objective.
std::unique_ptr<Objective> make_objective(std::shared_ptr<const TeamInstance> instance);

} // namespace hhgso::team

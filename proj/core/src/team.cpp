#include "hhgso/team.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace hhgso::team {

namespace {

std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split_skills(std::string_view field, std::string_view separators) {
    std::vector<std::string> skills;
    std::string token;
    for (const char ch : field) {
        if (separators.find(ch) != std::string_view::npos) {
            token = trim(token);
            if (!token.empty()) {
                skills.push_back(std::move(token));
            }
            token.clear();
        } else {
            token.push_back(ch);
        }
    }
    token = trim(token);
    if (!token.empty()) {
        skills.push_back(std::move(token));
    }
    std::sort(skills.begin(), skills.end());
    skills.erase(std::unique(skills.begin(), skills.end()), skills.end());
    return skills;
}

} // namespace

ExpertPool load_expert_pool(std::istream& in) {
    ExpertPool pool;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) {
            continue;
        }
        const auto tab = line.find('\t');
        const std::string name = tab == std::string::npos ? trim(line) : trim(line.substr(0, tab));
        auto skills = tab == std::string::npos
                          ? std::vector<std::string>{}
                          : split_skills(line.substr(tab + 1), ";");
        if (name.empty() || skills.empty()) {
            throw ParseError("dataset line " + std::to_string(line_number) +
                             ": expected `name<TAB>skill;skill;...`");
        }
        const int id = static_cast<int>(pool.experts.size());
        for (const std::string& skill : skills) {
            pool.skill_index[skill].push_back(id);
        }
        pool.experts.push_back(Expert{id, name, std::move(skills)});
    }
    if (pool.experts.empty()) {
        throw std::invalid_argument("dataset contains no experts");
    }
    return pool;
}

std::size_t convert_dataset(std::istream& in, std::ostream& out) {
    std::string line;
    std::size_t line_number = 0;
    std::size_t written = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) {
            continue;
        }
        std::string name;
        std::vector<std::string> skills;
        if (const auto tab = line.find('\t'); tab != std::string::npos) {
            name = trim(line.substr(0, tab));
            skills = split_skills(line.substr(tab + 1), ";,");
        } else if (const auto colon = line.find(':'); colon != std::string::npos) {
            name = trim(line.substr(0, colon));
            skills = split_skills(line.substr(colon + 1), ";,");
        }
        if (name.empty() || skills.empty()) {
            throw ParseError("dataset line " + std::to_string(line_number) +
                             ": cannot normalize; expected `name<TAB>...` or `name: ...`");
        }
        out << name << '\t';
        for (std::size_t i = 0; i < skills.size(); ++i) {
            out << (i == 0 ? "" : ";") << skills[i];
        }
        out << '\n';
        ++written;
    }
    if (written == 0) {
        throw std::invalid_argument("dataset contains no experts");
    }
    return written;
}

double interaction_cost(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() && b.empty()) {
        throw std::invalid_argument("interaction_cost: both skill sets empty");
    }
    std::size_t intersection = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++intersection;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    const std::size_t unions = a.size() + b.size() - intersection;
    return 1.0 - static_cast<double>(intersection) / static_cast<double>(unions);
}

double team_cost(const std::set<int>& members, const ExpertPool& pool) {
    for (const int id : members) {
        if (id < 0 || static_cast<std::size_t>(id) >= pool.experts.size()) {
            throw std::invalid_argument("team_cost: unknown expert id " + std::to_string(id));
        }
    }
    double cost = 0.0;
    for (auto first = members.begin(); first != members.end(); ++first) {
        for (auto second = std::next(first); second != members.end(); ++second) {
            cost += interaction_cost(pool.experts[*first].skills,
                                     pool.experts[*second].skills);
        }
    }
    return cost;
}

TeamInstance::TeamInstance(std::shared_ptr<const ExpertPool> pool,
                           std::vector<std::string> required_skills)
    : pool_(std::move(pool)) {
    if (pool_ == nullptr) {
        throw std::invalid_argument("team instance: null pool");
    }
    for (auto& skill : required_skills) {
        skill = trim(skill);
        if (skill.empty()) {
            continue;
        }
        if (std::find(required_skills_.begin(), required_skills_.end(), skill) !=
            required_skills_.end()) {
            continue;
        }
        const auto it = pool_->skill_index.find(skill);
        if (it == pool_->skill_index.end() || it->second.empty()) {
            throw std::invalid_argument("team instance: no expert offers skill `" + skill +
                                        "`");
        }
        required_skills_.push_back(skill);
        candidates_.push_back(it->second);
    }
    if (required_skills_.empty()) {
        throw std::invalid_argument("team instance: required skill list is empty");
    }
}

Team decode(std::span<const double> position, const TeamInstance& instance) {
    const auto& candidates = instance.candidates();
    if (position.size() != candidates.size()) {
        throw std::invalid_argument("decode: position length does not match skill count");
    }
    Team result;
    for (std::size_t d = 0; d < position.size(); ++d) {
        const auto limit = static_cast<double>(candidates[d].size() - 1);
        const double index = std::min(limit, std::max(0.0, std::floor(position[d])));
        result.members.insert(candidates[d][static_cast<std::size_t>(index)]);
    }
    result.cost = team_cost(result.members, instance.pool());
    return result;
}

namespace {

class TeamObjective final : public Objective {
  public:
    explicit TeamObjective(std::shared_ptr<const TeamInstance> instance)
        : instance_(std::move(instance)) {
        const auto& candidates = instance_->candidates();
        bounds_.lower.assign(candidates.size(), 0.0);
        bounds_.upper.reserve(candidates.size());
        for (const auto& list : candidates) {
            // Open upper end so floor() never lands past the last candidate.
            bounds_.upper.push_back(static_cast<double>(list.size()) - 1e-9);
        }
    }

    std::size_t dimension() const override { return bounds_.lower.size(); }
    const Bounds& bounds() const override { return bounds_; }
    Direction direction() const override { return Direction::kMinimize; }
    double evaluate(std::span<const double> position) const override {
        return decode(position, *instance_).cost;
    }

  private:
    std::shared_ptr<const TeamInstance> instance_;
    Bounds bounds_;
};

} // namespace

std::unique_ptr<Objective> make_objective(std::shared_ptr<const TeamInstance> instance) {
    if (instance == nullptr) {
        throw std::invalid_argument("make_objective: null instance");
    }
    return std::make_unique<TeamObjective>(std::move(instance));
}

} // namespace hhgso::team

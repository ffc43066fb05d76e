#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hhgso/engine.hpp"
#include "hhgso/search_core.hpp"

namespace hhgso::ca {

/// Parameters of a covering array: interaction strength t and the
/// per-parameter value counts (t >= 2, every domain >= 2, t <= parameter
/// count).
struct CoveringSpec {
    int strength = 2;
    std::vector<int> domains;

    std::size_t parameter_count() const { return domains.size(); }
    void validate() const; // throws std::invalid_argument

    /// Compact display form, e.g. "CA(2, 3^4)".
    std::string to_string() const;
};

/// Parses the spec notation `CA(<t>, <v>^<k> [<v>^<k>]...)`, whitespace
/// tolerant, domains expanded in written order. Throws ParseError with the
/// offending position.
CoveringSpec parse_spec(std::string_view text);

/// One t-way interaction: a strictly increasing column set and one value per
/// chosen column.
struct InteractionTuple {
    std::vector<int> columns;
    std::vector<int> values;

    std::string to_string() const;
};

/// The live set of not-yet-covered interactions, stored
/// column-combination-major so that scoring a test costs O(C(p, t) * t)
/// instead of a scan over all tuples.
class TupleSet {
  public:
    std::uint64_t size() const { return total_uncovered_; }
    bool empty() const { return total_uncovered_ == 0; }
    std::size_t combination_count() const { return combos_.size(); }

    bool contains(const InteractionTuple& tuple) const;

    /// Number of still-uncovered tuples whose projection the test matches.
    std::uint64_t coverage(std::span<const int> test) const;

    /// Removes the tuples the test covers; returns how many were removed.
    std::uint64_t remove_covered(std::span<const int> test);

    std::optional<InteractionTuple> first_uncovered() const;

  private:
    struct Combination {
        std::vector<int> columns;
        std::vector<std::uint32_t> strides; // last column varies fastest
        std::vector<char> uncovered;
        std::uint64_t uncovered_count = 0;
    };

    std::uint64_t rank(const Combination& combo, std::span<const int> test) const;

    std::vector<Combination> combos_;
    std::uint64_t total_uncovered_ = 0;

    friend TupleSet enumerate_tuples(const CoveringSpec& spec, std::uint64_t max_tuples);
};

inline constexpr std::uint64_t kDefaultTupleCap = 50'000'000;

/// Enumerates every t-way interaction of the spec: all C(p, t) column
/// combinations crossed with their value assignments. Throws
/// ResourceLimitError when the total exceeds max_tuples.
TupleSet enumerate_tuples(const CoveringSpec& spec, std::uint64_t max_tuples = kDefaultTupleCap);

/// Continuous-to-discrete decoding: value_d = floor(position[d]) saturated
/// into [0, v_d - 1].
std::vector<int> decode_test(std::span<const double> position, const CoveringSpec& spec);

/// Maximizing objective over [0, v_d - 1e-9]^p scoring a decoded test by
/// TupleSet::coverage against the given live set. The set must outlive the
/// objective and stay unchanged for the duration of one engine run.
class CoverageObjective final : public Objective {
  public:
    CoverageObjective(const CoveringSpec& spec, const TupleSet& tuples);

    std::size_t dimension() const override { return spec_->domains.size(); }
    const Bounds& bounds() const override { return bounds_; }
    Direction direction() const override { return Direction::kMaximize; }
    double evaluate(std::span<const double> position) const override;

  private:
    const CoveringSpec* spec_;
    const TupleSet* tuples_;
    Bounds bounds_;
};

struct CoveringArray {
    CoveringSpec spec;
    std::uint64_t seed = 0;
    std::vector<std::vector<int>> rows;

    std::size_t row_count() const { return rows.size(); }
};

/// Plain-text form: a `# CA(t, domains...) rows=S seed=...` header, then one
/// row per line with space-separated values.
void write_text(const CoveringArray& array, std::ostream& out);

/// JSON form mirroring the text fields: strength, domains, seed, row_count,
/// rows.
void write_json(const CoveringArray& array, std::ostream& out);

struct GenerationResult {
    CoveringArray array;
    std::uint64_t evaluations_used = 0;
    std::array<std::uint64_t, kAlgorithmCount> execution_counts{};

    /// Uncovered tuples remaining after each committed row; ends at 0.
    std::vector<std::uint64_t> coverage_trace;
};

/// One-test-at-a-time construction: each row comes from a fresh engine run
/// (seed = config seed XOR row index) maximizing new coverage against the
/// live tuple set, followed by a deterministic per-column polish that keeps
/// coverage maximal while preferring the smallest values; the polished test
/// is committed and its tuples removed, until nothing is uncovered.
///
/// Every committed row covers at least one new tuple, so the construction
/// terminates; the result always satisfies the t-largest-domains row floor.
GenerationResult generate_array(const CoveringSpec& spec, const EngineConfig& engine_config,
                                std::uint64_t max_tuples = kDefaultTupleCap);

/// Information-theoretic row floor: the product of the t largest domains.
std::uint64_t min_rows(const CoveringSpec& spec);

struct VerifyResult {
    bool covered = true;
    std::optional<InteractionTuple> missing;
};

/// Independent coverage check: re-enumerates every interaction from scratch
/// and scans the rows for each one, sharing no bookkeeping with TupleSet.
/// Throws std::invalid_argument when a row violates the domains.
VerifyResult verify_array(const CoveringArray& array);

} // namespace hhgso::ca

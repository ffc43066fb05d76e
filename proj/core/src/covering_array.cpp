#include "hhgso/covering_array.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

namespace hhgso::ca {

void CoveringSpec::validate() const {
    if (strength < 2) {
        throw std::invalid_argument("covering spec: strength must be >= 2");
    }
    if (static_cast<std::size_t>(strength) > domains.size()) {
        throw std::invalid_argument("covering spec: strength exceeds parameter count");
    }
    for (const int v : domains) {
        if (v < 2) {
            throw std::invalid_argument("covering spec: every domain must be >= 2");
        }
    }
}

std::string CoveringSpec::to_string() const {
    std::ostringstream out;
    out << "CA(" << strength << ",";
    std::size_t i = 0;
    while (i < domains.size()) {
        std::size_t j = i;
        while (j < domains.size() && domains[j] == domains[i]) {
            ++j;
        }
        out << ' ' << domains[i] << '^' << (j - i);
        i = j;
    }
    out << ')';
    return out.str();
}

namespace {

class SpecScanner {
  public:
    explicit SpecScanner(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool consume(char expected) {
        if (pos_ < text_.size() && text_[pos_] == expected) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool at_digit() const {
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    long read_int() {
        if (!at_digit()) {
            fail("expected a number");
        }
        long value = 0;
        while (at_digit()) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1'000'000'000L) {
                fail("number too large");
            }
            ++pos_;
        }
        return value;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("covering spec parse error at position " + std::to_string(pos_) +
                         ": " + what);
    }

    std::size_t pos() const { return pos_; }
    bool done() const { return pos_ >= text_.size(); }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

CoveringSpec parse_spec(std::string_view text) {
    SpecScanner scan(text);
    scan.skip_ws();
    if (!(scan.consume('C') || scan.consume('c')) || !(scan.consume('A') || scan.consume('a'))) {
        scan.fail("expected `CA`");
    }
    scan.skip_ws();
    if (!scan.consume('(')) {
        scan.fail("expected `(`");
    }
    scan.skip_ws();
    CoveringSpec spec;
    spec.strength = static_cast<int>(scan.read_int());
    scan.skip_ws();
    if (!scan.consume(',')) {
        scan.fail("expected `,` after the strength");
    }
    while (true) {
        scan.skip_ws();
        if (!scan.at_digit()) {
            break;
        }
        const long value_count = scan.read_int();
        if (!scan.consume('^')) {
            scan.fail("expected `^` after a domain size");
        }
        const long repeat = scan.read_int();
        if (repeat < 1) {
            scan.fail("domain repeat count must be >= 1");
        }
        if (value_count < 2) {
            scan.fail("every domain must be >= 2");
        }
        if (spec.domains.size() + static_cast<std::size_t>(repeat) > 10'000) {
            scan.fail("too many parameters");
        }
        spec.domains.insert(spec.domains.end(), static_cast<std::size_t>(repeat),
                            static_cast<int>(value_count));
    }
    scan.skip_ws();
    if (!scan.consume(')')) {
        scan.fail("expected `)`");
    }
    scan.skip_ws();
    if (!scan.done()) {
        scan.fail("trailing characters after `)`");
    }
    if (spec.domains.empty()) {
        scan.fail("expected at least one `<v>^<k>` group");
    }
    if (static_cast<std::size_t>(spec.strength) > spec.domains.size()) {
        scan.fail("strength exceeds parameter count");
    }
    spec.validate();
    return spec;
}

std::string InteractionTuple::to_string() const {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i == 0 ? "" : ", ") << "p" << columns[i] << "=" << values[i];
    }
    out << '}';
    return out.str();
}

std::uint64_t TupleSet::rank(const Combination& combo, std::span<const int> test) const {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < combo.columns.size(); ++i) {
        r += static_cast<std::uint64_t>(test[static_cast<std::size_t>(combo.columns[i])]) *
             combo.strides[i];
    }
    return r;
}

bool TupleSet::contains(const InteractionTuple& tuple) const {
    for (const Combination& combo : combos_) {
        if (combo.columns != tuple.columns) {
            continue;
        }
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < tuple.values.size(); ++i) {
            r += static_cast<std::uint64_t>(tuple.values[i]) * combo.strides[i];
        }
        return combo.uncovered[r] != 0;
    }
    return false;
}

std::uint64_t TupleSet::coverage(std::span<const int> test) const {
    std::uint64_t covered = 0;
    for (const Combination& combo : combos_) {
        covered += combo.uncovered[rank(combo, test)] != 0 ? 1 : 0;
    }
    return covered;
}

std::uint64_t TupleSet::remove_covered(std::span<const int> test) {
    std::uint64_t removed = 0;
    for (Combination& combo : combos_) {
        char& slot = combo.uncovered[rank(combo, test)];
        if (slot != 0) {
            slot = 0;
            --combo.uncovered_count;
            ++removed;
        }
    }
    total_uncovered_ -= removed;
    return removed;
}

std::optional<InteractionTuple> TupleSet::first_uncovered() const {
    for (const Combination& combo : combos_) {
        if (combo.uncovered_count == 0) {
            continue;
        }
        for (std::size_t r = 0; r < combo.uncovered.size(); ++r) {
            if (combo.uncovered[r] == 0) {
                continue;
            }
            InteractionTuple tuple;
            tuple.columns = combo.columns;
            tuple.values.resize(combo.columns.size());
            std::uint64_t rest = r;
            for (std::size_t i = 0; i < combo.columns.size(); ++i) {
                tuple.values[i] = static_cast<int>(rest / combo.strides[i]);
                rest %= combo.strides[i];
            }
            return tuple;
        }
    }
    return std::nullopt;
}

TupleSet enumerate_tuples(const CoveringSpec& spec, std::uint64_t max_tuples) {
    spec.validate();
    const std::size_t p = spec.parameter_count();
    const auto t = static_cast<std::size_t>(spec.strength);

    TupleSet set;
    std::vector<int> columns(t);
    // Standard lexicographic enumeration of column combinations.
    for (std::size_t i = 0; i < t; ++i) {
        columns[i] = static_cast<int>(i);
    }
    while (true) {
        TupleSet::Combination combo;
        combo.columns = columns;
        combo.strides.resize(t);
        std::uint64_t assignments = 1;
        for (std::size_t i = t; i-- > 0;) {
            combo.strides[i] = static_cast<std::uint32_t>(assignments);
            assignments *= static_cast<std::uint64_t>(
                spec.domains[static_cast<std::size_t>(columns[i])]);
        }
        if (set.total_uncovered_ + assignments > max_tuples) {
            throw ResourceLimitError("covering spec " + spec.to_string() + " exceeds the " +
                                     std::to_string(max_tuples) + "-tuple cap");
        }
        combo.uncovered.assign(assignments, 1);
        combo.uncovered_count = assignments;
        set.total_uncovered_ += assignments;
        set.combos_.push_back(std::move(combo));

        // Advance to the next combination.
        std::size_t i = t;
        while (i-- > 0) {
            if (columns[i] < static_cast<int>(p - t + i)) {
                ++columns[i];
                for (std::size_t j = i + 1; j < t; ++j) {
                    columns[j] = columns[j - 1] + 1;
                }
                break;
            }
            if (i == 0) {
                return set;
            }
        }
    }
}

std::vector<int> decode_test(std::span<const double> position, const CoveringSpec& spec) {
    if (position.size() != spec.parameter_count()) {
        throw std::invalid_argument("decode_test: position length does not match spec");
    }
    std::vector<int> test(position.size());
    for (std::size_t d = 0; d < position.size(); ++d) {
        const double limit = static_cast<double>(spec.domains[d] - 1);
        test[d] = static_cast<int>(std::min(limit, std::max(0.0, std::floor(position[d]))));
    }
    return test;
}

CoverageObjective::CoverageObjective(const CoveringSpec& spec, const TupleSet& tuples)
    : spec_(&spec), tuples_(&tuples) {
    bounds_.lower.assign(spec.parameter_count(), 0.0);
    bounds_.upper.reserve(spec.parameter_count());
    for (const int v : spec.domains) {
        bounds_.upper.push_back(static_cast<double>(v) - 1e-9);
    }
}

double CoverageObjective::evaluate(std::span<const double> position) const {
    return static_cast<double>(tuples_->coverage(decode_test(position, *spec_)));
}

void write_text(const CoveringArray& array, std::ostream& out) {
    out << "# CA(" << array.spec.strength << ",";
    for (const int v : array.spec.domains) {
        out << ' ' << v;
    }
    out << ") rows=" << array.rows.size() << " seed=" << array.seed << '\n';
    for (const auto& row : array.rows) {
        for (std::size_t d = 0; d < row.size(); ++d) {
            out << (d == 0 ? "" : " ") << row[d];
        }
        out << '\n';
    }
}

void write_json(const CoveringArray& array, std::ostream& out) {
    out << "{\"strength\": " << array.spec.strength << ", \"domains\": [";
    for (std::size_t d = 0; d < array.spec.domains.size(); ++d) {
        out << (d == 0 ? "" : ", ") << array.spec.domains[d];
    }
    out << "], \"rows\": " << array.rows.size() << ", \"seed\": " << array.seed
        << ", \"tests\": [";
    for (std::size_t r = 0; r < array.rows.size(); ++r) {
        out << (r == 0 ? "" : ", ") << '[';
        for (std::size_t d = 0; d < array.rows[r].size(); ++d) {
            out << (d == 0 ? "" : ", ") << array.rows[r][d];
        }
        out << ']';
    }
    out << "]}\n";
}

std::uint64_t min_rows(const CoveringSpec& spec) {
    std::vector<int> sorted = spec.domains;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    std::uint64_t floor_rows = 1;
    for (int i = 0; i < spec.strength; ++i) {
        floor_rows *= static_cast<std::uint64_t>(sorted[static_cast<std::size_t>(i)]);
    }
    return floor_rows;
}

namespace {

// Per-column polish of a committed row: repeatedly take the single-column
// change with the best (coverage, lexicographically-smallest) outcome until a
// fixpoint. Never lowers the row's coverage.
std::vector<int> polish_row(std::vector<int> test, const CoveringSpec& spec,
                            const TupleSet& tuples) {
    std::uint64_t current = tuples.coverage(test);
    bool moved = true;
    while (moved) {
        moved = false;
        std::vector<int> best_row = test;
        std::uint64_t best_cov = current;
        for (std::size_t d = 0; d < test.size(); ++d) {
            const int original = test[d];
            for (int w = 0; w < spec.domains[d]; ++w) {
                if (w == original) {
                    continue;
                }
                test[d] = w;
                const std::uint64_t cov = tuples.coverage(test);
                if (cov > best_cov || (cov == best_cov && test < best_row)) {
                    best_cov = cov;
                    best_row = test;
                }
            }
            test[d] = original;
        }
        if (best_row != test) {
            test = std::move(best_row);
            current = best_cov;
            moved = true;
        }
    }
    return test;
}

} // namespace

GenerationResult generate_array(const CoveringSpec& spec, const EngineConfig& engine_config,
                                std::uint64_t max_tuples) {
    spec.validate();
    engine_config.validate();
    TupleSet tuples = enumerate_tuples(spec, max_tuples);

    GenerationResult result;
    result.array.spec = spec;
    result.array.seed = engine_config.seed;

    while (!tuples.empty()) {
        EngineConfig row_config = engine_config;
        row_config.seed =
            engine_config.seed ^ static_cast<std::uint64_t>(result.array.rows.size());

        const CoverageObjective objective(spec, tuples);
        const RunResult row_run = run(row_config, objective);
        result.evaluations_used += row_run.evaluations_used;
        for (std::size_t i = 0; i < kAlgorithmCount; ++i) {
            result.execution_counts[i] += row_run.execution_counts[i];
        }

        std::vector<int> test =
            polish_row(decode_test(row_run.best.position, spec), spec, tuples);
        if (tuples.coverage(test) == 0) {
            // The search returned a fully redundant test; splice in the first
            // uncovered interaction so the construction always advances.
            const auto tuple = tuples.first_uncovered();
            if (tuple.has_value()) {
                for (std::size_t i = 0; i < tuple->columns.size(); ++i) {
                    test[static_cast<std::size_t>(tuple->columns[i])] = tuple->values[i];
                }
            }
        }
        const std::uint64_t removed = tuples.remove_covered(test);
        if (removed == 0) {
            throw InternalError("generate_array: committed a zero-coverage test for " +
                                spec.to_string());
        }
        result.array.rows.push_back(std::move(test));
        result.coverage_trace.push_back(tuples.size());
    }

    if (result.array.rows.size() < min_rows(spec)) {
        throw InternalError("generate_array: produced fewer rows than the coverage floor");
    }
    return result;
}

VerifyResult verify_array(const CoveringArray& array) {
    array.spec.validate();
    const std::size_t p = array.spec.parameter_count();
    const auto t = static_cast<std::size_t>(array.spec.strength);
    for (const auto& row : array.rows) {
        if (row.size() != p) {
            throw std::invalid_argument("verify_array: row length does not match spec");
        }
        for (std::size_t d = 0; d < p; ++d) {
            if (row[d] < 0 || row[d] >= array.spec.domains[d]) {
                throw std::invalid_argument("verify_array: row value out of domain");
            }
        }
    }

    // Deliberately slow and simple: no shared state with TupleSet.
    std::vector<int> columns(t);
    for (std::size_t i = 0; i < t; ++i) {
        columns[i] = static_cast<int>(i);
    }
    while (true) {
        std::vector<int> values(t, 0);
        while (true) {
            bool found = false;
            for (const auto& row : array.rows) {
                bool matches = true;
                for (std::size_t i = 0; i < t; ++i) {
                    if (row[static_cast<std::size_t>(columns[i])] != values[i]) {
                        matches = false;
                        break;
                    }
                }
                if (matches) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                return VerifyResult{false, InteractionTuple{columns, values}};
            }
            std::size_t k = t;
            while (k-- > 0) {
                if (++values[k] <
                    array.spec.domains[static_cast<std::size_t>(columns[k])]) {
                    break;
                }
                values[k] = 0;
                if (k == 0) {
                    goto next_combination;
                }
            }
        }
    next_combination:
        std::size_t i = t;
        while (i-- > 0) {
            if (columns[i] < static_cast<int>(p - t + i)) {
                ++columns[i];
                for (std::size_t j = i + 1; j < t; ++j) {
                    columns[j] = columns[j - 1] + 1;
                }
                break;
            }
            if (i == 0) {
                return VerifyResult{};
            }
        }
    }
}

} // namespace hhgso::ca

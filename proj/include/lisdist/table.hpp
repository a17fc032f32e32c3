#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace lisdist {

enum class TableSource { brute_force, hook_length, chazy_series, goulden };

const char* to_string(TableSource s);

struct Provenance {
    std::string backend;
    double tolerance = 0;
    std::string version;
};

// Exact P(L_n = l) for the rows it holds. Rows are stored for l = 1..n.
class ExactDistributionTable {
public:
    ExactDistributionTable() = default;
    explicit ExactDistributionTable(TableSource source) : source_(source) {}

    TableSource source() const { return source_; }
    int max_n() const { return rows_.empty() ? 0 : rows_.rbegin()->first; }
    bool has_row(int n) const { return rows_.count(n) != 0; }
    std::vector<int> row_indices() const;

    void set_row(int n, std::vector<mpq_class> pdf);
    const std::vector<mpq_class>& row(int n) const;

    // zero outside 1 <= l <= n
    mpq_class pdf(int n, int l) const;
    mpq_class cdf(int n, int l) const;

    // exact checks of the row invariants
    bool row_sums_to_one(int n) const;
    bool row_in_unit_interval(int n) const;

    // E(L_n) and Var(L_n), exact
    mpq_class mean(int n) const;
    mpq_class variance(int n) const;

private:
    TableSource source_ = TableSource::hook_length;
    std::map<int, std::vector<mpq_class>> rows_;
};

// JSON: {"max_n", "source", "entries": [{n, l, numerator, denominator,
// backend, tolerance, version}, ...]}
std::string table_to_json(const ExactDistributionTable& t, const Provenance& p);
ExactDistributionTable table_from_json(const std::string& text);

// CSV: n,l,pdf,cdf,backend,tolerance,version with decimals at `digits`
std::string table_to_csv(const ExactDistributionTable& t, const Provenance& p, int digits);

}  // namespace lisdist

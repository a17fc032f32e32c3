#include "lisdist/table.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "lisdist/error.hpp"
#include "lisdist/format.hpp"

namespace lisdist {

const char* to_string(TableSource s) {
    switch (s) {
        case TableSource::brute_force: return "brute_force";
        case TableSource::hook_length: return "hook_length";
        case TableSource::chazy_series: return "chazy_series";
        case TableSource::goulden: return "goulden";
    }
    return "unknown";
}

namespace {

TableSource source_from_string(const std::string& s) {
    for (auto t : {TableSource::brute_force, TableSource::hook_length, TableSource::chazy_series,
                   TableSource::goulden})
        if (s == to_string(t)) return t;
    throw PreconditionError("unknown table source: " + s);
}

}  // namespace

std::vector<int> ExactDistributionTable::row_indices() const {
    std::vector<int> out;
    for (auto& [n, r] : rows_) out.push_back(n);
    return out;
}

void ExactDistributionTable::set_row(int n, std::vector<mpq_class> pdf) {
    if (n < 1 || static_cast<int>(pdf.size()) != n)
        throw PreconditionError("ExactDistributionTable: row " + std::to_string(n) + " needs n entries");
    rows_[n] = std::move(pdf);
}

const std::vector<mpq_class>& ExactDistributionTable::row(int n) const {
    auto it = rows_.find(n);
    if (it == rows_.end()) throw RangeError("ExactDistributionTable: no row " + std::to_string(n));
    return it->second;
}

mpq_class ExactDistributionTable::pdf(int n, int l) const {
    if (l < 1 || l > n) return 0;
    return row(n)[l - 1];
}

mpq_class ExactDistributionTable::cdf(int n, int l) const {
    const auto& r = row(n);
    mpq_class s = 0;
    for (int k = 1; k <= std::min(l, n); ++k) s += r[k - 1];
    return s;
}

bool ExactDistributionTable::row_sums_to_one(int n) const { return cdf(n, n) == 1; }

bool ExactDistributionTable::row_in_unit_interval(int n) const {
    for (const auto& q : row(n))
        if (q < 0 || q > 1) return false;
    return true;
}

mpq_class ExactDistributionTable::mean(int n) const {
    const auto& r = row(n);
    mpq_class s = 0;
    for (int l = 1; l <= n; ++l) s += l * r[l - 1];
    return s;
}

mpq_class ExactDistributionTable::variance(int n) const {
    const auto& r = row(n);
    mpq_class s2 = 0;
    for (int l = 1; l <= n; ++l) s2 += mpq_class(l * l) * r[l - 1];
    mpq_class m = mean(n);
    return s2 - m * m;
}

std::string table_to_json(const ExactDistributionTable& t, const Provenance& p) {
    nlohmann::ordered_json j;
    j["max_n"] = t.max_n();
    j["source"] = to_string(t.source());
    auto& entries = j["entries"] = nlohmann::ordered_json::array();
    for (int n : t.row_indices()) {
        const auto& r = t.row(n);
        for (int l = 1; l <= n; ++l) {
            entries.push_back({{"n", n},
                               {"l", l},
                               {"numerator", r[l - 1].get_num().get_str()},
                               {"denominator", r[l - 1].get_den().get_str()},
                               {"backend", p.backend},
                               {"tolerance", p.tolerance},
                               {"version", p.version}});
        }
    }
    return j.dump(1);
}

ExactDistributionTable table_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    ExactDistributionTable t(source_from_string(j.at("source").get<std::string>()));
    std::map<int, std::vector<mpq_class>> rows;
    for (const auto& e : j.at("entries")) {
        int n = e.at("n").get<int>(), l = e.at("l").get<int>();
        auto& r = rows[n];
        if (r.empty()) r.assign(n, mpq_class(0));
        if (l < 1 || l > n) throw PreconditionError("table_from_json: l out of range");
        mpq_class q(mpz_class(e.at("numerator").get<std::string>()), mpz_class(e.at("denominator").get<std::string>()));
        q.canonicalize();
        r[l - 1] = q;
    }
    for (auto& [n, r] : rows) t.set_row(n, std::move(r));
    return t;
}

std::string table_to_csv(const ExactDistributionTable& t, const Provenance& p, int digits) {
    std::ostringstream os;
    os << "n,l,pdf,cdf,backend,tolerance,version\n";
    for (int n : t.row_indices()) {
        const auto& r = t.row(n);
        mpq_class c = 0;
        for (int l = 1; l <= n; ++l) {
            c += r[l - 1];
            os << n << ',' << l << ',' << format_rational(r[l - 1], digits) << ',' << format_rational(c, digits) << ','
               << p.backend << ',' << format_double(p.tolerance) << ',' << p.version << '\n';
        }
    }
    return os.str();
}

}  // namespace lisdist

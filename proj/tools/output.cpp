#include "output.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "lisdist/format.hpp"
#include "lisdist/version.hpp"

namespace lisdist::cli {

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

Output::Output(std::string command, std::vector<std::string> columns, Format format, bool fixed15)
    : command_(std::move(command)), columns_(std::move(columns)), format_(format), fixed15_(fixed15) {
    columns_.insert(columns_.end(), {"backend", "tolerance", "version"});
}

void Output::add(std::vector<Cell> cells, const std::string& backend, double tolerance) {
    cells.emplace_back(backend);
    cells.emplace_back(tolerance);
    cells.emplace_back(std::string(kVersion));
    if (cells.size() != columns_.size()) throw std::logic_error("Output: row width mismatch in " + command_);
    rows_.push_back(std::move(cells));
}

std::string Output::cell_text(const Cell& c, bool json) const {
    if (std::holds_alternative<Null>(c)) return json ? "null" : "";
    if (auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    if (auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) {
            if (json) return "null";
            return std::isnan(*d) ? "nan" : (*d > 0 ? "inf" : "-inf");
        }
        if (!fixed15_ && *d == std::trunc(*d) && std::abs(*d) < 1e15)
            return std::to_string(static_cast<long long>(*d));
        return format_double(*d, fixed15_);
    }
    const auto& s = std::get<std::string>(c);
    return json ? nlohmann::json(s).dump() : csv_quote(s);
}

std::string Output::render() const {
    std::string out;
    if (format_ == Format::csv) {
        for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
        out += '\n';
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + cell_text(r[i], false);
            out += '\n';
        }
        return out;
    }
    out = "{\"command\":" + nlohmann::json(command_).dump() + ",\"version\":" + nlohmann::json(kVersion).dump() +
          ",\"columns\":[";
    for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + nlohmann::json(columns_[i]).dump();
    out += "],\"rows\":[";
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        out += k ? ",\n{" : "\n{";
        for (std::size_t i = 0; i < columns_.size(); ++i)
            out += (i ? "," : "") + nlohmann::json(columns_[i]).dump() + ":" + cell_text(rows_[k][i], true);
        out += "}";
    }
    out += "]}\n";
    return out;
}

}  // namespace lisdist::cli

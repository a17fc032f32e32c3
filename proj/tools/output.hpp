#pragma once

#include <string>
#include <variant>
#include <vector>

namespace lisdist::cli {

struct Null {};
using Cell = std::variant<Null, bool, long long, double, std::string>;

enum class Format { csv, json };

// Rows of one subcommand. Every row ends with backend, tolerance, version.
class Output {
public:
    Output(std::string command, std::vector<std::string> columns, Format format, bool fixed15);

    void add(std::vector<Cell> cells, const std::string& backend, double tolerance);
    std::size_t size() const { return rows_.size(); }
    std::string render() const;

private:
    std::string cell_text(const Cell& c, bool json) const;

    std::string command_;
    std::vector<std::string> columns_;
    Format format_;
    bool fixed15_;
    std::vector<std::vector<Cell>> rows_;
};

}  // namespace lisdist::cli

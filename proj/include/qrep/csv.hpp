#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qrep {

using Cell = std::variant<double, long, std::string>;

// Fixed-column result table. Doubles print with 12 significant digits.
class Table {
public:
    explicit Table(std::vector<std::string> columns);

    void add(std::vector<Cell> row);
    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }

    void write_csv(std::ostream& out) const;
    void write_json(std::ostream& out) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

std::string format_number(double v);

struct Manifest {
    std::string subcommand;
    std::string scenario_path;
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> inputs;
    std::vector<std::string> defaulted;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    double wall_seconds = 0;
    std::vector<std::string> outputs;

    void write(std::ostream& out) const;
};

}  // namespace qrep

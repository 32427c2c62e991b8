#include "qrep/csv.hpp"

#include "qrep/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace qrep {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
    return buf;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns_.size()) throw ContractViolation("row width does not match the table header");
    rows_.push_back(std::move(row));
}

namespace {

std::string cell_text(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return format_number(*d);
    if (const long* l = std::get_if<long>(&c)) return std::to_string(*l);
    return std::get<std::string>(c);
}

}  // namespace

void Table::write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
        out << '\n';
    }
}

// Numbers go through the same 12-digit text as the CSV so both formats agree.
void Table::write_json(std::ostream& out) const {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (const double* d = std::get_if<double>(&row[i])) {
                if (std::isfinite(*d)) obj[columns_[i]] = std::stod(format_number(*d));
                else obj[columns_[i]] = format_number(*d);
            } else if (const long* l = std::get_if<long>(&row[i])) {
                obj[columns_[i]] = *l;
            } else {
                obj[columns_[i]] = std::get<std::string>(row[i]);
            }
        }
        rows.push_back(std::move(obj));
    }
    out << rows.dump(2) << '\n';
}

void Manifest::write(std::ostream& out) const {
    nlohmann::ordered_json j;
    j["tool"] = "qrep";
    j["version"] = QREP_VERSION;
    j["subcommand"] = subcommand;
    j["scenario"] = scenario_path;
    j["seed"] = seed;
    j["threads"] = threads;
    nlohmann::ordered_json in = nlohmann::ordered_json::object();
    for (const auto& [section, kv] : inputs) {
        nlohmann::ordered_json s = nlohmann::ordered_json::object();
        for (const auto& [k, v] : kv) s[k] = v;
        in[section] = std::move(s);
    }
    j["inputs"] = std::move(in);
    j["defaulted"] = defaulted;
    j["outputs"] = outputs;
    j["wall_time_s"] = wall_seconds;
    out << j.dump(2) << '\n';
}

}  // namespace qrep

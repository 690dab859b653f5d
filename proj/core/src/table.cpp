#include "topopass/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace topopass {

std::string format_number(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

ResultTable::ResultTable(std::string name, std::vector<Column> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {}

std::size_t ResultTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i].name == name) return i;
    throw std::out_of_range("no column '" + std::string(name) + "' in table " + name_);
}

std::vector<double> ResultTable::column(std::string_view name) const {
    const std::size_t k = column_index(name);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& row : rows_) out.push_back(row[k]);
    return out;
}

void ResultTable::add_row(std::vector<double> row) {
    if (row.size() != columns_.size())
        throw std::invalid_argument("row width " + std::to_string(row.size()) + " does not match schema width " +
                                    std::to_string(columns_.size()) + " in table " + name_);
    for (double x : row)
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite value in table " + name_);
    rows_.push_back(std::move(row));
}

std::string ResultTable::csv_header() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ',';
        out += columns_[i].name;
    }
    return out;
}

std::string ResultTable::to_csv() const {
    std::string out = csv_header() + '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json ResultTable::sidecar() const {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : columns_) cols.push_back({{"name", c.name}, {"unit", c.unit}, {"role", c.role}});
    return {{"table", name_}, {"columns", cols}, {"metadata", metadata_}};
}

nlohmann::json ResultTable::to_json() const {
    nlohmann::json doc = sidecar();
    doc["rows"] = rows_;
    return doc;
}

namespace {

ResultTable schema_from(const nlohmann::json& sidecar) {
    std::vector<Column> cols;
    for (const auto& c : sidecar.at("columns"))
        cols.push_back({c.at("name").get<std::string>(), c.at("unit").get<std::string>(), c.at("role").get<std::string>()});
    ResultTable table(sidecar.at("table").get<std::string>(), std::move(cols));
    table.metadata() = sidecar.at("metadata");
    return table;
}

}  // namespace

ResultTable ResultTable::from_csv(std::string_view csv, const nlohmann::json& sidecar) {
    ResultTable table = schema_from(sidecar);
    std::istringstream in{std::string(csv)};
    std::string line;
    if (!std::getline(in, line) || line != table.csv_header())
        throw std::invalid_argument("CSV header does not match the sidecar schema of " + table.name());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) {
            char* end = nullptr;
            row.push_back(std::strtod(field.c_str(), &end));
            if (*end != '\0') throw std::invalid_argument("bad CSV number '" + field + "'");
        }
        table.add_row(std::move(row));
    }
    return table;
}

ResultTable ResultTable::from_json(const nlohmann::json& document) {
    ResultTable table = schema_from(document);
    for (const auto& row : document.at("rows")) table.add_row(row.get<std::vector<double>>());
    return table;
}

}  // namespace topopass

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace topopass {

struct Column {
    std::string name;
    std::string unit;  // "J", "1/J", "rad", "" for dimensionless
    std::string role;  // "coordinate" or "value"

    bool operator==(const Column&) const = default;
};

/// Rectangular table of finite reals plus a JSON metadata block.
class ResultTable {
public:
    ResultTable() = default;
    ResultTable(std::string name, std::vector<Column> columns);

    const std::string& name() const noexcept { return name_; }
    const std::vector<Column>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
    nlohmann::json& metadata() noexcept { return metadata_; }
    const nlohmann::json& metadata() const noexcept { return metadata_; }

    std::size_t column_index(std::string_view name) const;
    std::vector<double> column(std::string_view name) const;

    /// Throws std::invalid_argument on width mismatch or non-finite entries.
    void add_row(std::vector<double> row);

    /// Header line of column names, then one line per row, every number
    /// printed with 17 significant digits.
    std::string to_csv() const;
    std::string csv_header() const;

    /// Schema plus metadata, the content of the CSV sidecar file.
    nlohmann::json sidecar() const;
    /// Sidecar plus rows.
    nlohmann::json to_json() const;

    static ResultTable from_csv(std::string_view csv, const nlohmann::json& sidecar);
    static ResultTable from_json(const nlohmann::json& document);

private:
    std::string name_;
    std::vector<Column> columns_;
    std::vector<std::vector<double>> rows_;
    nlohmann::json metadata_ = nlohmann::json::object();
};

std::string format_number(double value);

}  // namespace topopass

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shehu/oracle.hpp"

namespace shehu {

enum class Column { Shehu, Natural, Sumudu, Laplace };
inline constexpr Column kColumns[] = {Column::Shehu, Column::Natural, Column::Sumudu, Column::Laplace};
std::string_view to_string(Column c);

struct Instance {
    std::string label;  // "a=1,b=2", "n=3" or empty
    ConstantBindings constants;
};

/// One transform pair as printed, with the placeholder values it is checked at.
struct TableEntry {
    int row = 0;
    std::string time;
    std::string shehu, natural, sumudu, laplace;
    bool symbolic_only = false;
    bool suspect = false;
    std::vector<Instance> instances;

    const std::string& printed(Column c) const;
};

/// A transform identity stated elsewhere than the table (properties, worked examples).
struct Claim {
    std::string id;
    bool inverse = false;  // printed time function of an image, else printed image of a time function
    std::string time;
    std::string image;
    std::string printed;
    std::string note;
    std::vector<Instance> instances;
};

struct Table {
    std::vector<TableEntry> entries;
    std::vector<Claim> claims;
};

/// Reads and validates a fixture. Schema problems raise Schema errors naming the row.
Table load_table(const std::string& path);
Table parse_table(std::string_view json_text);
/// SHEHU_TABLE_PATH when set, else the fixture shipped with the sources.
std::string default_table_path();

enum class Status { Pass, Fail, Skipped, ErrataConfirmed };
std::string_view to_string(Status s);

struct ColumnCheck {
    Column column = Column::Shehu;
    Status status = Status::Skipped;
    std::string printed;
    std::string derived;
    std::optional<bool> exact_match;  // nullopt when the forms are not both rational
    std::vector<PointCheck> points;   // printed value against the adjudicating value
    std::string detail;
};

struct InstanceCheck {
    std::string label;
    std::string derived_image;       // homogenized, "F(r), r = s/u"
    Status rule_status = Status::Skipped;  // derived image against quadrature
    std::string rule_detail;
    bool cross_column_consistent = true;   // printed columns agree with each other on the grid
    std::vector<ColumnCheck> columns;
};

struct RowCheck {
    int row = 0;
    Status status = Status::Skipped;
    bool symbolic_only = false;
    std::vector<InstanceCheck> instances;
};

struct ClaimCheck {
    std::string id;
    Status status = Status::Skipped;
    std::string printed;
    std::string derived;
    std::string adjudication;
};

struct Erratum {
    std::string location;  // "row 16" or a claim id
    std::optional<int> row;
    std::optional<Column> column;
    std::string printed;
    std::string derived;
    std::vector<std::string> instances;
    std::string adjudication;
};

struct TableReport {
    std::vector<RowCheck> rows;
    std::vector<ClaimCheck> claims;
    std::vector<Erratum> errata;

    int rows_rule_verified() const;  // rows whose derived images pass quadrature at every instance
    int failures() const;            // unconfirmed discrepancies or broken derivations
    bool has_errata() const { return !errata.empty(); }
};

/// tol is the relative agreement required at every grid point.
TableReport verify_table(const Table& table, const std::vector<GridPoint>& grid = default_grid(),
                         long double tol = 1e-6L);

}  // namespace shehu

#include <cstdlib>
#include <set>
#include <utility>

#include <gtest/gtest.h>

#include "shehu/table.hpp"
#include "support/checks.hpp"

using namespace shehu;
using test::kind_of;

namespace {

const Table& fixture() {
    static const Table t = load_table(SHEHU_FIXTURE);
    return t;
}

const TableReport& report() {
    static const TableReport r = verify_table(fixture());
    return r;
}

const TableEntry& entry(int row) {
    for (const auto& e : fixture().entries)
        if (e.row == row) return e;
    throw std::out_of_range("no row " + std::to_string(row));
}

const RowCheck& row_check(int row) {
    for (const auto& r : report().rows)
        if (r.row == row) return r;
    throw std::out_of_range("no row " + std::to_string(row));
}

std::string one_row(const std::string& fields) {
    return R"({"schema_version": 1, "rows": [{"row": 5, )" + fields + R"(}], "claims": []})";
}

const char* kFullRow =
    R"("time": "1", "shehu": "u/s", "natural": "1/s", "sumudu": "1", "laplace": "1/s", "mode": "numeric", "suspect": false)";

using Pair = std::pair<int, Column>;

}  // namespace

TEST(Fixture, RowContent) {
    ASSERT_EQ(fixture().entries.size(), 35u);
    const TableEntry& r3 = entry(3);
    EXPECT_EQ(r3.time, "exp(a*t)");
    EXPECT_EQ(r3.shehu, "u/(s - a*u)");
    EXPECT_EQ(r3.laplace, "1/(s - a)");
    EXPECT_FALSE(r3.symbolic_only);
    EXPECT_EQ(r3.instances.size(), 2u);
    const TableEntry& r7 = entry(7);
    EXPECT_EQ(r7.shehu, "(u/s)^(n + 1)");
    EXPECT_EQ(r7.printed(Column::Sumudu), "u^n");
    EXPECT_GE(r7.instances.size(), 3u);
    EXPECT_EQ(r7.instances.front().label.substr(0, 2), "n=");
}

TEST(Fixture, ParsesMinimalRow) {
    Table t = parse_table(one_row(kFullRow));
    ASSERT_EQ(t.entries.size(), 1u);
    EXPECT_EQ(t.entries[0].row, 5);
    ASSERT_EQ(t.entries[0].instances.size(), 1u);
    EXPECT_EQ(t.entries[0].instances[0].label, "");
}

TEST(Fixture, MalformedRowNamesTheRow) {
    try {
        parse_table(one_row(R"("time": "1", "shehu": "u/s", "mode": "numeric")"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Schema);
        EXPECT_NE(std::string(e.what()).find("row 5"), std::string::npos) << e.what();
    }
    EXPECT_EQ(kind_of([] { parse_table(one_row(R"("time": "1", "shehu": "u/(s", "natural": "1/s",
        "sumudu": "1", "laplace": "1/s", "mode": "numeric", "suspect": false)")); }),
              ErrorKind::Schema);
    EXPECT_EQ(kind_of([] { parse_table("[1, 2"); }), ErrorKind::Schema);
    EXPECT_EQ(kind_of([] { load_table("/nonexistent/table.json"); }), ErrorKind::Io);
}

TEST(Fixture, EnvironmentOverride) {
    ::setenv("SHEHU_TABLE_PATH", "/tmp/elsewhere.json", 1);
    EXPECT_EQ(default_table_path(), "/tmp/elsewhere.json");
    ::unsetenv("SHEHU_TABLE_PATH");
    EXPECT_NE(default_table_path(), "/tmp/elsewhere.json");
}

TEST(VerifyTable, CleanRows) {
    EXPECT_EQ(row_check(4).status, Status::Pass);
    const RowCheck& r1 = row_check(1);
    EXPECT_EQ(r1.status, Status::Pass);
    ASSERT_EQ(r1.instances.size(), 1u);
    for (const auto& c : r1.instances[0].columns) {
        ASSERT_TRUE(c.exact_match.has_value()) << to_string(c.column);
        EXPECT_TRUE(*c.exact_match) << to_string(c.column);
    }
}

TEST(VerifyTable, StrayUPowerInShiftedDelta) {
    EXPECT_EQ(row_check(34).status, Status::ErrataConfirmed);
    std::set<Column> cols;
    for (const auto& e : report().errata)
        if (e.row == 34) cols.insert(*e.column);
    EXPECT_EQ(cols, std::set<Column>{Column::Shehu});
}

TEST(VerifyTable, FrozenErrataList) {
    const std::set<Pair> expected = {
        {6, Column::Shehu},     {6, Column::Natural},  {6, Column::Sumudu},   {6, Column::Laplace},
        {9, Column::Laplace},   {11, Column::Natural}, {11, Column::Sumudu},  {11, Column::Laplace},
        {13, Column::Sumudu},   {13, Column::Laplace}, {15, Column::Sumudu},  {16, Column::Shehu},
        {16, Column::Natural},  {16, Column::Sumudu},  {16, Column::Laplace}, {20, Column::Sumudu},
        {23, Column::Shehu},    {24, Column::Shehu},   {24, Column::Natural}, {24, Column::Sumudu},
        {24, Column::Laplace},  {28, Column::Natural}, {28, Column::Sumudu},  {30, Column::Shehu},
        {30, Column::Natural},  {30, Column::Sumudu},  {30, Column::Laplace}, {34, Column::Shehu},
    };
    const std::set<std::string> expected_claims = {"property-2", "property-16", "property-17",
                                                   "example-4-derivative-rule", "example-4-solution"};
    std::set<Pair> rows;
    std::set<std::string> claims;
    for (const auto& e : report().errata) {
        if (e.row) {
            ASSERT_TRUE(e.column.has_value());
            rows.insert({*e.row, *e.column});
        } else {
            claims.insert(e.location);
        }
        EXPECT_FALSE(e.adjudication.empty()) << e.location;
        EXPECT_FALSE(e.derived.empty()) << e.location;
    }
    EXPECT_EQ(rows, expected);
    EXPECT_EQ(claims, expected_claims);
    EXPECT_EQ(report().errata.size(), expected.size() + expected_claims.size());
    EXPECT_EQ(report().failures(), 0);
}

TEST(VerifyTable, ClaimsOutsideErrataPass) {
    for (const auto& c : report().claims) {
        if (c.status == Status::ErrataConfirmed) continue;
        EXPECT_EQ(c.status, Status::Pass) << c.id << ": " << c.adjudication;
    }
}

TEST(VerifyTable, Counts) {
    EXPECT_EQ(report().rows.size(), 35u);
    EXPECT_GE(report().rows_rule_verified(), 28);
    for (std::size_t i = 1; i < report().rows.size(); ++i) EXPECT_LT(report().rows[i - 1].row, report().rows[i].row);
}

TEST(VerifyTable, ExtendedGridAgrees) {
    TableReport ext = verify_table(fixture(), extended_grid());
    ASSERT_EQ(ext.errata.size(), report().errata.size());
    for (std::size_t i = 0; i < ext.errata.size(); ++i) {
        EXPECT_EQ(ext.errata[i].location, report().errata[i].location);
        EXPECT_EQ(ext.errata[i].column, report().errata[i].column);
    }
}

TEST(VerifyTable, Deterministic) {
    TableReport again = verify_table(fixture());
    ASSERT_EQ(again.rows.size(), report().rows.size());
    for (std::size_t i = 0; i < again.rows.size(); ++i) EXPECT_EQ(again.rows[i].status, report().rows[i].status);
    ASSERT_EQ(again.errata.size(), report().errata.size());
    for (std::size_t i = 0; i < again.errata.size(); ++i) {
        EXPECT_EQ(again.errata[i].location, report().errata[i].location);
        EXPECT_EQ(again.errata[i].adjudication, report().errata[i].adjudication);
    }
}

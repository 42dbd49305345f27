#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "shehu/solvers.hpp"
#include "shehu/table.hpp"

namespace shehu::cli {

enum class CommandStatus { Ok, Error, Errata };
std::string_view to_string(CommandStatus s);

/// Envelope printed by every subcommand under --json.
struct CommandResult {
    CommandStatus status = CommandStatus::Ok;
    std::string command;
    nlohmann::json payload;
    std::vector<std::string> diagnostics;
    std::string text;  // human-readable rendering of the payload

    int exit_code() const;  // 0 ok, 1 error, 2 errata
    nlohmann::json envelope() const;
};

CommandResult cmd_transform(const std::string& expr, View view, const ConstantBindings& constants = {});
/// Accepts transform output verbatim, including a trailing ", valid for ..." clause.
CommandResult cmd_invert(const std::string& image, const ConstantBindings& constants = {});
/// Converts a Shehu image (rational in s/u) or, with from_time, the image of a time function.
CommandResult cmd_convert(const std::string& text, bool from_time, const std::vector<View>& targets,
                          const ConstantBindings& constants = {});
CommandResult cmd_solve_ode(const std::string& equation, const std::string& inits);
CommandResult cmd_solve_pde(const ModalPDEProblem& problem);

struct SampleSpec {
    int nx = 21, nt = 21;
    long double x0 = -1, x1 = 1;
    long double t0 = -1, t1 = 1;
};
/// CSV "x,t,v" rows over the grid; a count of 1 samples the lower end of its range.
CommandResult cmd_sample(const Expr& solution, const SampleSpec& spec);

CommandResult cmd_verify_table(const std::string& fixture, const std::vector<GridPoint>& grid,
                               long double tol = 1e-6L);
nlohmann::json report_json(const TableReport& report);

/// Parses "default", "extended" or "s:u,s:u,...".
std::vector<GridPoint> parse_grid(const std::string& text);

/// Entry point of the shehu binary.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace shehu::cli

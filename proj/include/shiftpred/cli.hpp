#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "shiftpred/report.hpp"

namespace shiftpred {

/// A named check that produces one report line.
struct Task {
  std::string name;
  std::function<Report()> run;
};

/// Runs the tasks on `workers` threads and returns the reports in task order.
/// A task throwing shiftpred::Error yields a failing report carrying the
/// message.
std::vector<Report> run_tasks(const std::vector<Task>& tasks, unsigned workers, bool timing);

/// Exit codes: 0 all reports pass or are evidence-only, 1 some report failed,
/// 2 usage error, 3 unreadable config or csv file.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shiftpred

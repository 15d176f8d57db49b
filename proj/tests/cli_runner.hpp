#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>

namespace amsolve::test {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

/// Runs the CLI through the shell; stderr is discarded.
inline CliResult run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = "'" + cli + "' " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

/// Output with timing removed: "time_ms" lines dropped and the last field of
/// CSV rows whose header ends in time_ms cut off.
inline std::string mask_timing(const std::string& out) {
  std::istringstream in(out);
  std::ostringstream res;
  bool csv_timed = false;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("time_ms", 0) == 0) continue;
    if (line.size() >= 8 && line.compare(line.size() - 8, 8, ",time_ms") == 0) csv_timed = true;
    if (csv_timed && line.find(',') != std::string::npos && line[0] != '#') {
      line.erase(line.rfind(','));
    }
    res << line << '\n';
  }
  return res.str();
}

inline int count_lines(const std::string& s, const std::string& prefix = "") {
  std::istringstream in(s);
  int n = 0;
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
  return n;
}

}  // namespace amsolve::test

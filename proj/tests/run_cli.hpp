#pragma once

// Runs the gdcomp executable through the shell and captures its output.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace cli {

struct Result {
  int exit_code = -1;
  std::string out;  // stdout and stderr, interleaved
};

inline Result run(const std::string& args) {
  const std::string cmd = std::string("'") + GDCOMP_CLI_PATH + "' " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

// Measurement count recorded for the last invocation in the test-mode log.
inline long last_logged_measurements(const std::string& log) {
  std::istringstream in(read_file(log));
  std::string command;
  long count = -1, value;
  while (in >> command >> value) count = value;
  return count;
}

}  // namespace cli

#pragma once

// Runs a command line through the shell, capturing stdout, stderr and the
// exit code. Test-only; paths and arguments are controlled by the tests.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace testsupport {

struct ProcessResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string shell_quote(const std::string& arg) {
  std::string quoted = "'";
  for (const char c : arg) {
    if (c == '\'') quoted += "'\\''";
    else quoted += c;
  }
  quoted += "'";
  return quoted;
}

inline ProcessResult run_process(const std::string& command) {
  ProcessResult result;
  const std::string err_path =
      std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
      "/anovabf_test_stderr_" + std::to_string(getpid()) + ".txt";
  const std::string full = command + " 2>" + shell_quote(err_path);

  FILE* pipe = popen(full.c_str(), "r");
  if (pipe == nullptr) return result;

  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.out.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);

  std::ifstream err_file(err_path, std::ios::binary);
  std::ostringstream err_stream;
  err_stream << err_file.rdbuf();
  result.err = err_stream.str();
  std::remove(err_path.c_str());
  return result;
}

}  // namespace testsupport

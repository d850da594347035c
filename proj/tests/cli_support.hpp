#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace testing {

namespace fs = std::filesystem;

inline fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("quelab_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// Runs the CLI; returns its exit status.
inline int run_quelab(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" QUELAB_BINARY "\" " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') cell += '"', ++i;
        else if (c == '"') quoted = false;
        else cell += c;
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"omega-scan", "qe-scan-picard", "moments", "qe-scan-third",
                                                 "variance", "selberg-check", "eval"};
  return names;
}

// Subcommand for a preset file name.
inline std::string preset_subcommand(const std::string& name) {
  if (name.rfind("qe-scan", 0) == 0) return "qe-scan";
  return name;
}

inline fs::path preset_path(const std::string& name) {
  return fs::path(QUELAB_SOURCE_DIR) / "presets" / (name + ".ini");
}

}  // namespace testing

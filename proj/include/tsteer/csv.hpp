#pragma once

#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsteer/config.hpp"

namespace tsteer {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// CSV with a leading "# "-prefixed metadata block. Doubles are written with
// %.17g so a rerun from the metadata reproduces the file byte for byte.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : path_(path), out_(path) {
    if (!out_) throw io_error("cannot open output file '" + path + "'");
  }

  void metadata(const std::string& config_text) {
    std::size_t pos = 0;
    while (pos < config_text.size()) {
      const std::size_t nl = config_text.find('\n', pos);
      const std::string line = config_text.substr(
          pos, nl == std::string::npos ? std::string::npos : nl - pos);
      out_ << "# " << line << '\n';
      pos = nl == std::string::npos ? config_text.size() : nl + 1;
    }
    check();
  }

  void header(const std::vector<std::string>& cols) { write_cells(cols); }

  void row(const std::vector<std::string>& cells) { write_cells(cells); }

  static std::string cell(double v) { return detail::format_double(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }

 private:
  void write_cells(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
    out_.flush();
    check();
  }

  void check() {
    if (!out_) throw io_error("write failed on '" + path_ + "'");
  }

  std::string path_;
  std::ofstream out_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw io_error("read failed on '" + path + "'");
  return text;
}

}  // namespace tsteer

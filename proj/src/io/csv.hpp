#ifndef HS_IO_CSV_HPP
#define HS_IO_CSV_HPP

#include <string>
#include <vector>

namespace hs::io {

// RFC-4180 CSV with CRLF line endings. Numeric cells are formatted with %.17g
// so re-runs are byte-identical.
class CsvWriter {
public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();

  void row(const std::vector<std::string>& cells);
  void close();

  static std::string num(double v);
  static std::string num(long long v);

private:
  struct Impl;
  Impl* impl_;
};

} // namespace hs::io

#endif

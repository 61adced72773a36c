#include "io/csv.hpp"

#include <cstdio>
#include <fstream>

#include "core/errors.hpp"

namespace hs::io {

struct CsvWriter::Impl {
  std::ofstream os;
};

CsvWriter::CsvWriter(const std::string& path) : impl_(new Impl) {
  impl_->os.open(path, std::ios::binary | std::ios::trunc);
  if (!impl_->os) {
    delete impl_;
    fail(errc::io, "cannot open for writing: " + path);
  }
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) impl_->os << ',';
    impl_->os << cells[i];
  }
  impl_->os << "\r\n";
}

void CsvWriter::close() { impl_->os.close(); }

std::string CsvWriter::num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string CsvWriter::num(long long v) { return std::to_string(v); }

} // namespace hs::io

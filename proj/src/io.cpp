#include "bhh/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>

namespace bhh {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'B', 'H', 'F', '1'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int s = 0; s < 64; s += 8) out.push_back(static_cast<std::uint8_t>(bits >> s));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[at + i]) << (8 * i);
  return v;
}

double get_f64(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[at + i]) << (8 * i);
  return std::bit_cast<double>(v);
}

std::uint32_t checked_u32(Index v, const char* what) {
  if (v < 0 || static_cast<std::uint64_t>(v) > std::numeric_limits<std::uint32_t>::max())
    throw StorageError(StorageErrorKind::DimensionMismatch, 0,
                       std::string(what) + " does not fit the 32-bit header field");
  return static_cast<std::uint32_t>(v);
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  double next(const char* what) {
    const double v = get_f64(bytes_, pos_);
    if (!std::isfinite(v))
      throw StorageError(StorageErrorKind::NonFinite, pos_, std::string("non-finite ") + what);
    pos_ += 8;
    return v;
  }
  std::size_t position() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::string trim_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

bool is_blank(std::string_view s) { return s.find_first_not_of(" \t") == std::string_view::npos; }

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_token(std::string_view tok, std::size_t line) {
  T v{};
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw StorageError(StorageErrorKind::MalformedNumber, line,
                       "line " + std::to_string(line) + ": malformed number '" + std::string(tok) + "'");
  return v;
}

}  // namespace

const char* to_string(StorageErrorKind kind) {
  switch (kind) {
    case StorageErrorKind::BadMagic: return "bad magic";
    case StorageErrorKind::Truncated: return "truncated";
    case StorageErrorKind::DimensionMismatch: return "dimension mismatch";
    case StorageErrorKind::TrailingData: return "trailing data";
    case StorageErrorKind::MalformedNumber: return "malformed number";
    case StorageErrorKind::ShapeMismatch: return "shape mismatch";
    case StorageErrorKind::EmptyFile: return "empty file";
    case StorageErrorKind::NonFinite: return "non-finite value";
    case StorageErrorKind::Io: return "i/o failure";
  }
  return "unknown";
}

StorageError::StorageError(StorageErrorKind kind, std::size_t position, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), position_(position) {}

std::size_t factor_file_size(std::size_t n, std::size_t k, std::size_t w) {
  return kFactorHeaderBytes + 8 * (k + k * w + n * n);
}

std::vector<std::uint8_t> encode_factor(const CompactSubspaceFactor<double>& f) {
  const auto& g = f.g();
  const Index n = f.cols();
  const Index k = g.count();
  const Index w = g.bandwidth();

  std::vector<std::uint8_t> out;
  out.reserve(factor_file_size(n, k, w));
  for (const auto c : kMagic) out.push_back(c);
  put_u32(out, checked_u32(f.rows(), "m"));
  put_u32(out, checked_u32(n, "n"));
  put_u32(out, static_cast<std::uint32_t>(f.placement()));
  put_u32(out, checked_u32(k, "count"));
  put_u32(out, checked_u32(w, "bandwidth"));
  for (Index i = 0; i < k; ++i) put_f64(out, g.beta(i));
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < w; ++j) put_f64(out, g.free_entries()(i, j));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) put_f64(out, f.b_factor()(i, j));
  return out;
}

CompactSubspaceFactor<double> decode_factor(std::span<const std::uint8_t> bytes) {
  const std::size_t probe = std::min(bytes.size(), kMagic.size());
  if (!std::equal(kMagic.begin(), kMagic.begin() + probe, bytes.begin()))
    throw StorageError(StorageErrorKind::BadMagic, 0, "expected \"BHF1\" at byte 0");
  if (bytes.size() < kFactorHeaderBytes)
    throw StorageError(StorageErrorKind::Truncated, bytes.size(),
                       "header needs " + std::to_string(kFactorHeaderBytes) + " bytes, got " +
                           std::to_string(bytes.size()));

  const std::uint64_t m = get_u32(bytes, 4);
  const std::uint64_t n = get_u32(bytes, 8);
  const std::uint32_t placement = get_u32(bytes, 12);
  const std::uint64_t k = get_u32(bytes, 16);
  const std::uint64_t w = get_u32(bytes, 20);

  if (placement > 1)
    throw StorageError(StorageErrorKind::DimensionMismatch, 12,
                       "placement field is " + std::to_string(placement) + ", expected 0 or 1");
  if (n > m)
    throw StorageError(StorageErrorKind::DimensionMismatch, 8,
                       "n = " + std::to_string(n) + " exceeds m = " + std::to_string(m));
  if (k + w != m)
    throw StorageError(StorageErrorKind::DimensionMismatch, 16,
                       "count " + std::to_string(k) + " + bandwidth " + std::to_string(w) +
                           " != m = " + std::to_string(m));
  const std::uint64_t expected_k = placement == 0 ? n : m - n;
  if (k != expected_k)
    throw StorageError(StorageErrorKind::DimensionMismatch, 16,
                       "count " + std::to_string(k) + " inconsistent with placement (expected " +
                           std::to_string(expected_k) + ")");

  const unsigned __int128 wide = kFactorHeaderBytes + 8 * (static_cast<unsigned __int128>(k) * (w + 1) +
                                                             static_cast<unsigned __int128>(n) * n);
  if (wide > std::numeric_limits<std::size_t>::max())
    throw StorageError(StorageErrorKind::DimensionMismatch, 4, "declared payload size overflows");
  const std::size_t expected = factor_file_size(n, k, w);
  if (bytes.size() < expected)
    throw StorageError(StorageErrorKind::Truncated, bytes.size(),
                       "expected " + std::to_string(expected) + " bytes, got " + std::to_string(bytes.size()));
  if (bytes.size() > expected)
    throw StorageError(StorageErrorKind::TrailingData, expected,
                       "expected " + std::to_string(expected) + " bytes, got " + std::to_string(bytes.size()));

  Reader r(bytes);
  r.seek(kFactorHeaderBytes);
  const auto ki = static_cast<Index>(k), wi = static_cast<Index>(w), ni = static_cast<Index>(n);
  Eigen::VectorXd betas(ki);
  for (Index i = 0; i < ki; ++i) {
    const std::size_t at = r.position();
    betas(i) = r.next("beta");
    if (betas(i) < 0.0) throw StorageError(StorageErrorKind::DimensionMismatch, at, "negative beta");
  }
  RowMatrix<double> free(ki, wi);
  for (Index i = 0; i < ki; ++i)
    for (Index j = 0; j < wi; ++j) free(i, j) = r.next("free entry");
  Eigen::MatrixXd b(ni, ni);
  for (Index i = 0; i < ni; ++i)
    for (Index j = 0; j < ni; ++j) b(i, j) = r.next("B entry");

  return {BandedReflectors<double>(static_cast<Index>(m), std::move(free), std::move(betas)), std::move(b),
          placement == 0 ? Placement::Top : Placement::Bottom};
}

std::size_t write_factor(const CompactSubspaceFactor<double>& f, std::ostream& sink) {
  const auto bytes = encode_factor(f);
  sink.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  sink.flush();
  if (!sink) throw StorageError(StorageErrorKind::Io, 0, "write of " + std::to_string(bytes.size()) + " bytes failed");
  return bytes.size();
}

CompactSubspaceFactor<double> read_factor(std::istream& source) {
  std::vector<std::uint8_t> bytes;
  char buf[1 << 14];
  while (source.read(buf, sizeof buf) || source.gcount() > 0)
    bytes.insert(bytes.end(), buf, buf + source.gcount());
  if (source.bad()) throw StorageError(StorageErrorKind::Io, bytes.size(), "read failed");
  return decode_factor(bytes);
}

std::size_t write_factor_file(const CompactSubspaceFactor<double>& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StorageError(StorageErrorKind::Io, 0, "cannot open " + path + " for writing");
  return write_factor(f, out);
}

CompactSubspaceFactor<double> read_factor_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError(StorageErrorKind::Io, 0, "cannot open " + path);
  return read_factor(in);
}

std::size_t write_matrix(const Eigen::MatrixXd& a, std::ostream& sink) {
  std::string text = std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  std::array<char, 32> buf{};
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (j > 0) text += ' ';
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), a(i, j), std::chars_format::general, 17);
      text.append(buf.data(), res.ptr);
    }
    text += '\n';
  }
  sink << text;
  sink.flush();
  if (!sink) throw StorageError(StorageErrorKind::Io, 0, "matrix write failed");
  return text.size();
}

Eigen::MatrixXd read_matrix(std::istream& source) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(source, line) || is_blank(trim_cr(line)))
    throw StorageError(StorageErrorKind::EmptyFile, 1, "missing \"m n\" header");
  const auto header = split(trim_cr(line));
  if (header.size() != 2)
    throw StorageError(StorageErrorKind::ShapeMismatch, 1,
                       "line 1: header must be \"m n\", got " + std::to_string(header.size()) + " fields");
  const auto rows = parse_token<long long>(header[0], 1);
  const auto cols = parse_token<long long>(header[1], 1);
  if (rows < 0 || cols < 0) throw StorageError(StorageErrorKind::MalformedNumber, 1, "line 1: negative dimension");

  Eigen::MatrixXd a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    ++lineno;
    if (!std::getline(source, line))
      throw StorageError(StorageErrorKind::ShapeMismatch, lineno,
                         "line " + std::to_string(lineno) + ": expected " + std::to_string(rows) +
                             " rows, file ends after " + std::to_string(i));
    const std::string row = trim_cr(line);
    const auto fields = split(row);
    if (static_cast<long long>(fields.size()) != cols)
      throw StorageError(StorageErrorKind::ShapeMismatch, lineno,
                         "line " + std::to_string(lineno) + ": expected " + std::to_string(cols) +
                             " values, got " + std::to_string(fields.size()));
    for (Index j = 0; j < cols; ++j) {
      const double v = parse_token<double>(fields[j], lineno);
      if (!std::isfinite(v))
        throw StorageError(StorageErrorKind::NonFinite, lineno,
                           "line " + std::to_string(lineno) + ": non-finite value '" + std::string(fields[j]) + "'");
      a(i, j) = v;
    }
  }
  while (std::getline(source, line)) {
    ++lineno;
    if (!is_blank(trim_cr(line)))
      throw StorageError(StorageErrorKind::ShapeMismatch, lineno,
                         "line " + std::to_string(lineno) + ": more than " + std::to_string(rows) + " rows");
  }
  return a;
}

std::size_t write_matrix_file(const Eigen::MatrixXd& a, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw StorageError(StorageErrorKind::Io, 0, "cannot open " + path + " for writing");
  return write_matrix(a, out);
}

Eigen::MatrixXd read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StorageError(StorageErrorKind::Io, 0, "cannot open " + path);
  return read_matrix(in);
}

}  // namespace bhh

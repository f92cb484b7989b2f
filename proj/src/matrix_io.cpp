#include "sepnmf/matrix_io.hpp"

#include "sepnmf/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace sepnmf::io {

namespace {

constexpr char kMagic[8] = {'S', 'E', 'P', 'N', 'M', 'F', '0', '1'};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view tok, std::size_t line) {
  tok = trim(tok);
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" +
                     std::string(tok) + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ": non-finite value");
  }
  return v;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void put_double(std::ostream& out, double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v,
                                       std::chars_format::general, 17);
  out.write(buf, ptr - buf);
}

}  // namespace

Format format_from_path(const std::filesystem::path& p) {
  const std::string ext = lower(p.extension().string());
  if (ext == ".csv") return Format::csv;
  if (ext == ".mtx" || ext == ".mm") return Format::matrix_market;
  if (ext == ".bin") return Format::binary;
  throw ArgumentError("cannot infer matrix format from '" + p.string() +
                      "' (use .csv, .mtx or .bin, or pass --format)");
}

Format parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "mm" || s == "mtx" || s == "matrix-market") return Format::matrix_market;
  if (s == "bin" || s == "binary") return Format::binary;
  throw ArgumentError("unknown format '" + std::string(s) + "'");
}

DenseMatrix read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = body.find(',', start);
      row.push_back(parse_double(body.substr(start, comma - start), lineno));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(rows.front().size()) + " fields, found " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("csv: no data rows");
  const auto nr = static_cast<Index>(rows.size());
  const auto nc = static_cast<Index>(rows.front().size());
  Eigen::MatrixXd m(nr, nc);
  for (Index i = 0; i < nr; ++i)
    for (Index j = 0; j < nc; ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return DenseMatrix(std::move(m));
}

DenseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("matrix market: empty input");
  std::istringstream header(lower(line));
  std::string banner, object, layout, field, symmetry;
  header >> banner >> object >> layout >> field >> symmetry;
  if (banner != "%%matrixmarket" || object != "matrix") {
    throw ParseError("matrix market: missing '%%MatrixMarket matrix' banner");
  }
  if (layout != "array" && layout != "coordinate") {
    throw ParseError("matrix market: unsupported layout '" + layout + "'");
  }
  if (field != "real" && field != "double" && field != "integer") {
    throw ParseError("matrix market: unsupported field '" + field + "'");
  }
  if (symmetry != "general") {
    throw ParseError("matrix market: only general symmetry is supported");
  }

  std::size_t lineno = 1;
  auto next_data_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++lineno;
      const std::string_view body = trim(out);
      if (body.empty() || body.front() == '%') continue;
      return true;
    }
    return false;
  };
  auto fields = [&](const std::string& s) {
    std::vector<std::string_view> toks;
    std::string_view v(s);
    std::size_t i = 0;
    while (i < v.size()) {
      while (i < v.size() && std::isspace(static_cast<unsigned char>(v[i]))) ++i;
      std::size_t j = i;
      while (j < v.size() && !std::isspace(static_cast<unsigned char>(v[j]))) ++j;
      if (j > i) toks.push_back(v.substr(i, j - i));
      i = j;
    }
    return toks;
  };
  auto as_count = [&](std::string_view tok) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 0) {
      throw ParseError("line " + std::to_string(lineno) + ": bad count '" +
                       std::string(tok) + "'");
    }
    return static_cast<Index>(v);
  };

  if (!next_data_line(line)) throw ParseError("matrix market: missing size line");
  const auto size = fields(line);
  const bool array = layout == "array";
  if (size.size() != (array ? 2u : 3u)) {
    throw ParseError("line " + std::to_string(lineno) + ": bad size line");
  }
  const Index nr = as_count(size[0]), nc = as_count(size[1]);
  if (nr < 1 || nc < 1) throw ParseError("matrix market: dimensions must be >= 1");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nr, nc);

  if (array) {
    Index k = 0;
    while (k < nr * nc && next_data_line(line)) {
      for (auto tok : fields(line)) {
        if (k >= nr * nc) throw ParseError("matrix market: too many values");
        m(k % nr, k / nr) = parse_double(tok, lineno);
        ++k;
      }
    }
    if (k != nr * nc) {
      throw ParseError("matrix market: expected " + std::to_string(nr * nc) +
                       " values, found " + std::to_string(k));
    }
  } else {
    const Index nnz = as_count(size[2]);
    for (Index e = 0; e < nnz; ++e) {
      if (!next_data_line(line)) throw ParseError("matrix market: truncated entries");
      const auto toks = fields(line);
      if (toks.size() != 3) {
        throw ParseError("line " + std::to_string(lineno) + ": expected 'i j value'");
      }
      const Index i = as_count(toks[0]), j = as_count(toks[1]);
      if (i < 1 || i > nr || j < 1 || j > nc) {
        throw ParseError("line " + std::to_string(lineno) + ": index out of range");
      }
      m(i - 1, j - 1) += parse_double(toks[2], lineno);
    }
  }
  if (next_data_line(line)) throw ParseError("matrix market: trailing data");
  return DenseMatrix(std::move(m));
}

DenseMatrix read_binary(std::istream& in) {
  char magic[8];
  std::int64_t dims[2];
  if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) {
    throw ParseError("binary: bad magic");
  }
  if (!in.read(reinterpret_cast<char*>(dims), sizeof dims) || dims[0] < 1 || dims[1] < 1) {
    throw ParseError("binary: bad dimensions");
  }
  Eigen::MatrixXd m(dims[0], dims[1]);
  if (!in.read(reinterpret_cast<char*>(m.data()),
               static_cast<std::streamsize>(m.size() * sizeof(double)))) {
    throw ParseError("binary: truncated payload");
  }
  if (in.peek() != std::char_traits<char>::eof()) throw ParseError("binary: trailing bytes");
  if (!m.allFinite()) throw ParseError("binary: non-finite value");
  return DenseMatrix(std::move(m));
}

void write_csv(std::ostream& out, const DenseMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out.put(',');
      put_double(out, m(i, j));
    }
    out.put('\n');
  }
}

void write_matrix_market(std::ostream& out, const DenseMatrix& m) {
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      put_double(out, m(i, j));
      out.put('\n');
    }
}

void write_binary(std::ostream& out, const DenseMatrix& m) {
  const std::int64_t dims[2] = {m.rows(), m.cols()};
  out.write(kMagic, 8);
  out.write(reinterpret_cast<const char*>(dims), sizeof dims);
  out.write(reinterpret_cast<const char*>(m.data()),
            static_cast<std::streamsize>(m.rows() * m.cols() * sizeof(double)));
}

DenseMatrix read_matrix(const std::filesystem::path& p, Format f) {
  std::ifstream in(p, f == Format::binary ? std::ios::binary : std::ios::in);
  if (!in) throw IoError("cannot open '" + p.string() + "' for reading");
  try {
    switch (f) {
      case Format::csv: return read_csv(in);
      case Format::matrix_market: return read_matrix_market(in);
      case Format::binary: return read_binary(in);
    }
  } catch (const ParseError& e) {
    throw ParseError(p.string() + ": " + e.what());
  }
  throw ArgumentError("read_matrix: unknown format");
}

DenseMatrix read_matrix(const std::filesystem::path& p) {
  return read_matrix(p, format_from_path(p));
}

void write_matrix(const std::filesystem::path& p, const DenseMatrix& m, Format f) {
  std::ofstream out(p, f == Format::binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot open '" + p.string() + "' for writing");
  switch (f) {
    case Format::csv: write_csv(out, m); break;
    case Format::matrix_market: write_matrix_market(out, m); break;
    case Format::binary: write_binary(out, m); break;
  }
  out.flush();
  if (!out) throw IoError("write to '" + p.string() + "' failed");
}

std::uint64_t checksum(const DenseMatrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t dims[2] = {m.rows(), m.cols()};
  mix(dims, sizeof dims);
  mix(m.data(), static_cast<std::size_t>(m.rows() * m.cols()) * sizeof(double));
  return h;
}

}  // namespace sepnmf::io

#include "globalcube/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "globalcube/errors.hpp"

namespace globalcube::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Yields content lines with their 1-based numbers, skipping blanks and comments.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++number_;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      line = trim(raw);
      if (!line.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(number_) + ": " + what);
  }

 private:
  std::istream& in_;
  int number_ = 0;
};

int parse_int(const std::string& s, const LineReader& r, const char* what) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) r.fail(std::string("malformed ") + what + " '" + s + "'");
  return v;
}

int parse_header(LineReader& r, const std::string& kind) {
  std::string line;
  if (!r.next(line)) r.fail("missing '" + kind + " n=<n>' header");
  const std::string prefix = kind + " n=";
  if (line.rfind(prefix, 0) != 0) r.fail("expected '" + kind + " n=<n>' header, got '" + line + "'");
  return parse_int(trim(line.substr(prefix.size())), r, "dimension");
}

template <class T>
T open_and(const std::filesystem::path& path, T (*reader)(std::istream&)) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return reader(in);
}

}  // namespace

cube::CubeFamily read_cube_family(std::istream& in) {
  LineReader r(in);
  const int n = parse_header(r, "cube");
  try {
    cube::require_exact_dim(n);
  } catch (const Error& e) {
    r.fail(e.what());
  }
  std::vector<cube::Mask> members;
  std::string line;
  while (r.next(line)) {
    unsigned long long v = 0;
    const auto* end = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(line.data(), end, v, 16);
    if (ec != std::errc() || ptr != end) r.fail("malformed hex mask '" + line + "'");
    if (v > cube::full_mask(n)) r.fail("mask " + line + " has bits beyond dimension " + std::to_string(n));
    members.push_back(static_cast<cube::Mask>(v));
  }
  return cube::CubeFamily(n, std::move(members));
}

void write_cube_family(std::ostream& out, const cube::CubeFamily& family) {
  out << "cube n=" << family.dim() << '\n';
  char buf[16];
  for (auto m : family.members()) {
    std::snprintf(buf, sizeof buf, "%x", static_cast<unsigned>(m));
    out << buf << '\n';
  }
}

families::PermFamily read_perm_family(std::istream& in) {
  LineReader r(in);
  const int n = parse_header(r, "perm");
  if (n < 1 || n > families::kMaxFamilyDegree) r.fail("permutation degree out of range");
  std::vector<families::Permutation> members;
  std::string line;
  while (r.next(line)) {
    std::istringstream ss(line);
    std::vector<int> img;
    std::string tok;
    while (ss >> tok) img.push_back(parse_int(tok, r, "image"));
    if (static_cast<int>(img.size()) != n)
      r.fail("permutation has " + std::to_string(img.size()) + " images, expected " + std::to_string(n));
    try {
      members.emplace_back(std::move(img));
    } catch (const Error& e) {
      r.fail(e.what());
    }
  }
  return families::PermFamily(n, std::move(members));
}

void write_perm_family(std::ostream& out, const families::PermFamily& family) {
  out << "perm n=" << family.n() << '\n';
  for (const auto& s : family.members()) {
    for (int i = 1; i <= s.size(); ++i) out << (i > 1 ? " " : "") << s(i);
    out << '\n';
  }
}

embed::BitMatrix read_bit_matrix(std::istream& in) {
  LineReader r(in);
  const int n = parse_header(r, "bitmat");
  if (n < 1 || n > embed::kMaxMatrixN) r.fail("bit matrix size out of range");
  std::string bits, line;
  int rows = 0;
  while (r.next(line)) {
    if (static_cast<int>(line.size()) != n) r.fail("row must have exactly " + std::to_string(n) + " characters");
    if (line.find_first_not_of("01") != std::string::npos) r.fail("row may contain only 0 and 1");
    bits += line;
    ++rows;
  }
  if (rows != n) r.fail("expected " + std::to_string(n) + " rows, found " + std::to_string(rows));
  return embed::BitMatrix::from_bitstring(n, bits);
}

void write_bit_matrix(std::ostream& out, const embed::BitMatrix& x) {
  out << "bitmat n=" << x.n() << '\n';
  const auto bits = x.to_bitstring();
  for (int i = 0; i < x.n(); ++i) out << bits.substr(static_cast<std::size_t>(i) * x.n(), x.n()) << '\n';
}

fourier::FourierCoeffs read_coefficients_csv(std::istream& in) {
  std::string raw;
  int number = 0;
  auto fail = [&](const std::string& what) -> void {
    throw ParseError("line " + std::to_string(number) + ": " + what);
  };
  int n = -1;
  double p = 0;
  bool saw_columns = false;
  std::vector<double> coeffs;
  std::vector<bool> seen;
  while (std::getline(in, raw)) {
    ++number;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (n < 0 && std::sscanf(line.c_str(), "# n=%d p=%lf", &n, &p) == 2) {
        try {
          cube::require_exact_dim(n);
        } catch (const Error& e) {
          fail(e.what());
        }
        coeffs.assign(std::size_t{1} << n, 0.0);
        seen.assign(coeffs.size(), false);
      }
      continue;
    }
    if (n < 0) fail("missing '# n=<n> p=<p>' header");
    if (!saw_columns) {
      if (line != "subset,coefficient") fail("expected column header 'subset,coefficient'");
      saw_columns = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail("expected '<hex subset>,<coefficient>'");
    const std::string key = trim(line.substr(0, comma)), val = trim(line.substr(comma + 1));
    unsigned long long subset = 0;
    const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), subset, 16);
    if (ec != std::errc() || ptr != key.data() + key.size() || subset >= coeffs.size())
      fail("malformed subset mask '" + key + "'");
    if (seen[subset]) fail("subset " + key + " listed twice");
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != val.size() || val.empty()) fail("malformed coefficient '" + val + "'");
    coeffs[subset] = v;
    seen[subset] = true;
  }
  if (n < 0) throw ParseError("missing '# n=<n> p=<p>' header");
  if (!(p > 0 && p < 1)) throw ParseError("bias in header must lie in (0, 1)");
  return fourier::FourierCoeffs(n, p, std::move(coeffs));
}

void write_coefficients_csv(std::ostream& out, const fourier::FourierCoeffs& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", c.bias());
  out << "# n=" << c.dim() << " p=" << buf << '\n' << "subset,coefficient\n";
  for (std::size_t s = 0; s < c.coeffs().size(); ++s) {
    std::snprintf(buf, sizeof buf, "%zx,%.17g", s, c.coeffs()[s]);
    out << buf << '\n';
  }
}

cube::CubeFamily load_cube_family(const std::filesystem::path& path) { return open_and(path, &read_cube_family); }

families::PermFamily load_perm_family(const std::filesystem::path& path) {
  return open_and(path, &read_perm_family);
}

embed::BitMatrix load_bit_matrix(const std::filesystem::path& path) { return open_and(path, &read_bit_matrix); }

}  // namespace globalcube::io

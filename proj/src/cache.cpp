#include "tlhom/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace tlh::cache {

namespace fs = std::filesystem;

std::optional<fs::path> directory() {
  const char* env = std::getenv(kEnvVar);
  if (!env || !*env) return std::nullopt;
  fs::path p(env);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) return std::nullopt;
  return p;
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t matrix_hash(const SparseMatrix& m, std::uint64_t seed) {
  std::uint64_t h = fnv1a(std::to_string(m.rows()) + "x" + std::to_string(m.cols()), seed);
  for (std::uint32_t c = 0; c < m.cols(); ++c)
    for (std::uint32_t k = m.col_begin(c); k < m.col_end(c); ++k) {
      std::uint32_t r = m.row_index(k);
      std::int64_t v = m.value(k);
      h = fnv1a(std::string_view(reinterpret_cast<const char*>(&r), sizeof r), h);
      h = fnv1a(std::string_view(reinterpret_cast<const char*>(&c), sizeof c), h);
      h = fnv1a(std::string_view(reinterpret_cast<const char*>(&v), sizeof v), h);
    }
  return h;
}

void atomic_write(const fs::path& path, const std::string& text) {
  std::random_device rd;
  fs::path tmp = path;
  tmp += ".tmp." + hex((static_cast<std::uint64_t>(rd()) << 32) ^ rd());
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) return;
    out << text;
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      return;
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) fs::remove(tmp, ec);
}

namespace {

void append_manifest(const fs::path& dir, const std::string& key, const std::string& description) {
  std::ofstream out(dir / "manifest.txt", std::ios::app);
  out << key << '\t' << description << '\n';
}

}  // namespace

std::optional<std::vector<mpz_class>> load_factors(const std::string& key) {
  auto dir = directory();
  if (!dir) return std::nullopt;
  std::ifstream in(*dir / (key + ".snf"));
  if (!in) return std::nullopt;
  std::string version;
  std::size_t count = 0;
  if (!(in >> version >> count) || version != kCodeVersion) return std::nullopt;
  std::vector<mpz_class> out;
  out.reserve(count);
  // run-length encoded: value multiplicity pairs
  std::size_t seen = 0;
  std::string v;
  std::size_t mult = 0;
  while (seen < count && in >> v >> mult) {
    mpz_class z(v);
    out.insert(out.end(), mult, z);
    seen += mult;
  }
  if (seen != count) return std::nullopt;
  return out;
}

void store_factors(const std::string& key, const std::string& description, const std::vector<mpz_class>& f) {
  auto dir = directory();
  if (!dir) return;
  std::ostringstream os;
  os << kCodeVersion << ' ' << f.size() << '\n';
  for (std::size_t i = 0; i < f.size();) {
    std::size_t j = i;
    while (j < f.size() && f[j] == f[i]) ++j;
    os << f[i].get_str() << ' ' << (j - i) << '\n';
    i = j;
  }
  atomic_write(*dir / (key + ".snf"), os.str());
  append_manifest(*dir, key, description);
}

std::optional<SparseMatrix> load_matrix(const std::string& key) {
  auto dir = directory();
  if (!dir) return std::nullopt;
  std::ifstream in(*dir / (key + ".mtx"));
  if (!in) return std::nullopt;
  std::string version;
  std::uint32_t rows = 0, cols = 0;
  std::size_t nnz = 0;
  if (!(in >> version >> rows >> cols >> nnz) || version != kCodeVersion) return std::nullopt;
  std::vector<SparseMatrix::Triplet> t(nnz);
  for (auto& x : t)
    if (!(in >> x.row >> x.col >> x.value)) return std::nullopt;
  return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

void store_matrix(const std::string& key, const std::string& description, const SparseMatrix& m) {
  auto dir = directory();
  if (!dir) return;
  std::ostringstream os;
  os << kCodeVersion << ' ' << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (auto& x : m.triplets()) os << x.row << ' ' << x.col << ' ' << x.value << '\n';
  atomic_write(*dir / (key + ".mtx"), os.str());
  append_manifest(*dir, key, description);
}

}  // namespace tlh::cache

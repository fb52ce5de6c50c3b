#pragma once

#include <gmpxx.h>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tlhom/exactlin.hpp"

namespace tlh::cache {

inline constexpr const char* kCodeVersion = "tlhom-1";
inline constexpr const char* kEnvVar = "TLHOM_CACHE_DIR";

/** Cache directory from the environment; nullopt disables caching. */
std::optional<std::filesystem::path> directory();

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 1469598103934665603ull);
std::string hex(std::uint64_t h);
std::uint64_t matrix_hash(const SparseMatrix& m, std::uint64_t seed);

std::optional<std::vector<mpz_class>> load_factors(const std::string& key);
void store_factors(const std::string& key, const std::string& description, const std::vector<mpz_class>& f);

std::optional<SparseMatrix> load_matrix(const std::string& key);
void store_matrix(const std::string& key, const std::string& description, const SparseMatrix& m);

/** Writes `text` to `path` via a temporary file and rename. */
void atomic_write(const std::filesystem::path& path, const std::string& text);

}  // namespace tlh::cache

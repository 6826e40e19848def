#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atlas/group/homomorphism.hpp"

namespace atlas {

struct TowerFlags {
  bool abelian = false;
  bool nilpotent = false;
  bool virtually_zp = false;
  bool finitely_generated = false;
  bool center_trivial_expected = false;
};

struct TowerMeta {
  std::string family;
  std::vector<std::uint64_t> primes;
  TowerFlags flags;
  std::optional<int> dim_estimate;
  int depth = 0;
  // family parameters (0 when unused)
  std::uint64_t p = 0;
  std::uint32_t n = 0;
  // pirim: A1 = A^m with m minimal such that A^m = I mod 3
  std::uint32_t pirim_m = 0;
};

// Levels are numbered 1..depth. map(k) goes from level k+1 onto level k.
class Tower {
 public:
  // Element codes let composite maps be checked against a direct reduction.
  using Reducer = std::function<std::uint64_t(std::uint64_t code, int from_level, int to_level)>;

  Tower() = default;
  Tower(TowerMeta meta, std::vector<FiniteGroup> levels, std::vector<Homomorphism> maps);

  const TowerMeta& meta() const { return meta_; }
  int depth() const { return static_cast<int>(levels_.size()); }
  const FiniteGroup& level(int k) const;
  const Homomorphism& map(int k) const;
  // Composite from level k down to level j (j <= k); identity when j == k.
  Homomorphism composite(int j, int k) const;
  std::vector<std::uint32_t> orders() const;

  // Named subgroup threads (one subgroup per level), e.g. "Z" or "H".
  const std::map<std::string, std::vector<Subgroup>>& threads() const { return threads_; }
  const Subgroup& thread(const std::string& name, int k) const;
  bool has_thread(const std::string& name) const { return threads_.count(name) != 0; }
  // Named elements per level, e.g. "x1".
  Elem element(const std::string& name, int k) const;
  bool has_element(const std::string& name) const { return elements_.count(name) != 0; }

  // Coprime product towers keep their factors.
  const std::vector<Tower>& factors() const { return factors_; }

  const std::vector<std::uint64_t>* codes(int k) const;
  const Reducer& reducer() const { return reducer_; }

  Tower truncated(int depth) const;

  // Construction helpers used by the family constructors.
  void set_thread(std::string name, std::vector<Subgroup> per_level) { threads_[std::move(name)] = std::move(per_level); }
  void set_element(std::string name, std::vector<Elem> per_level) { elements_[std::move(name)] = std::move(per_level); }
  void set_codes(std::vector<std::vector<std::uint64_t>> codes, Reducer r) {
    codes_ = std::move(codes);
    reducer_ = std::move(r);
  }
  void set_factors(std::vector<Tower> f) { factors_ = std::move(f); }
  // Replaces one connecting map without checks (fault injection in tests).
  void replace_map_unchecked(int k, Homomorphism h);

 private:
  TowerMeta meta_;
  std::vector<FiniteGroup> levels_;
  std::vector<Homomorphism> maps_;
  std::map<std::string, std::vector<Subgroup>> threads_;
  std::map<std::string, std::vector<Elem>> elements_;
  std::vector<Tower> factors_;
  std::vector<std::vector<std::uint64_t>> codes_;
  Reducer reducer_;
};

Tower make_zp(std::uint64_t p, int depth);
Tower make_zpn(std::uint64_t p, std::uint32_t n, int depth);
Tower make_heisenberg(std::uint64_t p, int depth);
Tower make_dihedral2(int depth);
Tower make_pirim(int depth);
Tower make_wilson(int depth);
// Pairwise disjoint primes and equal depth. Levels above the order cap are
// kept as implicit products (up to Limits::product_cap).
Tower make_product(const std::vector<Tower>& towers);
// Same layout but primes may repeat, e.g. H x Z_p for the solitary criterion.
Tower make_product_shared_primes(const std::vector<Tower>& towers);

// A tower from explicit groups and maps; meta.family is "custom".
Tower make_custom(std::vector<FiniteGroup> levels, std::vector<Homomorphism> maps, TowerFlags flags = {});

// The 2x2 integer matrix A = (0 1; 4 2) behind the pirim family.
using Mat2 = std::array<std::array<std::int64_t, 2>, 2>;
Mat2 pirim_matrix();
Mat2 mat_mul_mod(const Mat2& a, const Mat2& b, std::int64_t m);
Mat2 mat_pow_mod(const Mat2& a, std::uint64_t e, std::int64_t m);
// Least m > 0 with A^m = I mod 3.
std::uint32_t pirim_exponent();

enum class Violation {
  HomomorphismLawViolation,
  NotSurjective,
  GroupMismatch,
  OrderNotDivisible,
  CompositionMismatch,
  PrimeMismatch,
};
std::string_view to_string(Violation v);

struct ValidationIssue {
  Violation kind;
  int level;  // the map's source level, or the level concerned
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate(const Tower& t);

}  // namespace atlas

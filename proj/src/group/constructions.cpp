#include "atlas/group/constructions.hpp"

#include <algorithm>
#include <map>

#include "atlas/config.hpp"
#include "atlas/error.hpp"
#include "atlas/group/operators.hpp"

namespace atlas {

namespace {

void check_cap(std::uint64_t order) {
  if (order > limits().order_cap)
    fail(ErrorCode::CapExceeded,
         "group order " + std::to_string(order) + " exceeds cap " + std::to_string(limits().order_cap));
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

}  // namespace

FiniteGroup cyclic(std::uint32_t n) {
  if (n == 0) fail(ErrorCode::InvalidGroup, "cyclic order must be positive");
  check_cap(n);
  std::vector<Elem> gens;
  if (n > 1) gens.push_back(1);
  return FiniteGroup::from_function(n, [n](Elem a, Elem b) { return (a + b) % n; }, gens);
}

FiniteGroup abelian(const std::vector<std::uint32_t>& moduli) {
  std::uint64_t n = 1;
  for (auto m : moduli) {
    if (m == 0) fail(ErrorCode::InvalidGroup, "modulus must be positive");
    n *= m;
    check_cap(n);
  }
  const auto order = static_cast<std::uint32_t>(n);
  std::vector<Elem> gens;
  std::uint32_t stride = 1;
  for (std::size_t i = moduli.size(); i-- > 0;) {
    if (moduli[i] > 1) gens.push_back(stride);
    stride *= moduli[i];
  }
  std::reverse(gens.begin(), gens.end());
  auto mul = [&moduli](Elem a, Elem b) {
    Elem out = 0;
    std::uint32_t stride = 1;
    for (std::size_t i = moduli.size(); i-- > 0;) {
      const std::uint32_t m = moduli[i];
      out += ((a / stride) % m + (b / stride) % m) % m * stride;
      stride *= m;
    }
    return out;
  };
  return FiniteGroup::from_function(order, mul, gens);
}

FiniteGroup dihedral(std::uint32_t n) {
  if (n == 0) fail(ErrorCode::InvalidGroup, "dihedral parameter must be positive");
  check_cap(2ull * n);
  // (r^a s^x)(r^b s^y) = r^(a + (-1)^x b) s^(x+y)
  auto mul = [n](Elem u, Elem v) {
    const std::uint32_t a = u % n, x = u / n, b = v % n, y = v / n;
    const std::uint32_t r = x ? (a + n - b) % n : (a + b) % n;
    return r + n * ((x + y) % 2);
  };
  std::vector<Elem> gens;
  if (n > 1) gens.push_back(1);
  gens.push_back(n);
  std::vector<std::string> labels;
  for (std::uint32_t k = 0; k < 2 * n; ++k) {
    const std::uint32_t a = k % n;
    std::string l = a == 0 ? (k < n ? "e" : "") : (a == 1 ? "r" : "r^" + std::to_string(a));
    if (k >= n) l += "s";
    labels.push_back(l);
  }
  return FiniteGroup::from_function(2 * n, mul, gens, labels);
}

FiniteGroup quaternion8() {
  // unit products among 1,i,j,k as (sign, unit)
  static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  auto mul = [](Elem a, Elem b) {
    const int s = (a >= 4 ? -1 : 1) * (b >= 4 ? -1 : 1) * sign[a % 4][b % 4];
    return static_cast<Elem>(unit[a % 4][b % 4] + (s < 0 ? 4 : 0));
  };
  return FiniteGroup::from_function(8, mul, {1, 2}, {"1", "i", "j", "k", "-1", "-i", "-j", "-k"});
}

FiniteGroup permutation_group(std::uint32_t degree, const std::vector<std::vector<std::uint32_t>>& generators) {
  if (degree == 0 || degree > 16) fail(ErrorCode::InvalidGroup, "permutation degree must be 1..16");
  auto encode = [](const std::vector<std::uint32_t>& p) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < p.size(); ++i) c |= std::uint64_t{p[i]} << (4 * i);
    return c;
  };
  std::vector<std::uint64_t> codes;
  for (const auto& p : generators) {
    if (p.size() != degree) fail(ErrorCode::InvalidGroup, "permutation has wrong length");
    std::vector<char> hit(degree, 0);
    for (auto v : p) {
      if (v >= degree || hit[v]) fail(ErrorCode::InvalidGroup, "not a permutation");
      hit[v] = 1;
    }
    codes.push_back(encode(p));
  }
  std::vector<std::uint32_t> id(degree);
  for (std::uint32_t i = 0; i < degree; ++i) id[i] = i;
  // x(gh) = (x g) h
  auto mul = [degree](std::uint64_t g, std::uint64_t h) {
    std::uint64_t c = 0;
    for (std::uint32_t i = 0; i < degree; ++i) {
      const std::uint64_t gi = (g >> (4 * i)) & 15u;
      c |= ((h >> (4 * gi)) & 15u) << (4 * i);
    }
    return c;
  };
  auto label = [degree](std::uint64_t c) {
    std::string s = "[";
    for (std::uint32_t i = 0; i < degree; ++i) {
      if (i) s += ' ';
      s += std::to_string((c >> (4 * i)) & 15u);
    }
    return s + "]";
  };
  return group_from_generators(codes, encode(id), mul, nullptr, label);
}

FiniteGroup matrix_group(std::uint32_t modulus, const std::vector<std::vector<std::vector<std::int64_t>>>& generators) {
  if (modulus < 2) fail(ErrorCode::InvalidGroup, "modulus must be at least 2");
  if (generators.empty()) fail(ErrorCode::InvalidGroup, "matrix group needs a generator");
  const std::size_t dim = generators.front().size();
  unsigned bits = 0;
  while ((1ull << bits) < modulus) ++bits;
  if (dim == 0 || dim * dim * bits > 64) fail(ErrorCode::InvalidGroup, "matrix size and modulus exceed 64-bit packing");
  const std::uint64_t mask = (1ull << bits) - 1;
  auto encode = [&](const std::vector<std::vector<std::int64_t>>& m) {
    if (m.size() != dim) fail(ErrorCode::InvalidGroup, "matrices must share one size");
    std::uint64_t c = 0;
    for (std::size_t r = 0; r < dim; ++r) {
      if (m[r].size() != dim) fail(ErrorCode::InvalidGroup, "matrix must be square");
      for (std::size_t col = 0; col < dim; ++col)
        c |= static_cast<std::uint64_t>(mod(m[r][col], modulus)) << (bits * (r * dim + col));
    }
    return c;
  };
  std::vector<std::uint64_t> codes;
  for (const auto& m : generators) codes.push_back(encode(m));
  std::vector<std::vector<std::int64_t>> id(dim, std::vector<std::int64_t>(dim, 0));
  for (std::size_t i = 0; i < dim; ++i) id[i][i] = 1;
  auto entry = [=](std::uint64_t c, std::size_t r, std::size_t col) {
    return static_cast<std::uint64_t>((c >> (bits * (r * dim + col))) & mask);
  };
  auto mul = [=](std::uint64_t a, std::uint64_t b) {
    std::uint64_t c = 0;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t col = 0; col < dim; ++col) {
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < dim; ++k) s = (s + entry(a, r, k) * entry(b, k, col)) % modulus;
        c |= s << (bits * (r * dim + col));
      }
    return c;
  };
  auto label = [=](std::uint64_t c) {
    std::string s = "[";
    for (std::size_t r = 0; r < dim; ++r) {
      if (r) s += ';';
      for (std::size_t col = 0; col < dim; ++col) {
        if (col) s += ' ';
        s += std::to_string(entry(c, r, col));
      }
    }
    return s + "]";
  };
  return group_from_generators(codes, encode(id), mul, nullptr, label);
}

std::pair<FiniteGroup, Homomorphism> quotient(const Subgroup& n) {
  if (!is_normal(n)) fail(ErrorCode::NotNormal, "quotient needs a normal subgroup");
  const FiniteGroup& g = n.parent();
  const auto nm = n.members().members();
  const std::uint32_t none = g.order();
  std::vector<Elem> coset(g.order(), none);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (coset[x] != none) continue;
    const auto id = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem y : nm) coset[g.mul(x, y)] = id;
  }
  const auto q = static_cast<std::uint32_t>(reps.size());
  std::vector<Elem> gens;
  for (Elem s : g.generators()) gens.push_back(coset[s]);
  std::vector<std::string> labels;
  for (Elem r : reps) labels.push_back(g.label(r) + "N");
  FiniteGroup quo = FiniteGroup::from_function(
      q, [&](Elem a, Elem b) { return coset[g.mul(reps[a], reps[b])]; }, gens, labels);
  Homomorphism proj = Homomorphism::make(g, quo, coset);
  return {std::move(quo), std::move(proj)};
}

FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2) {
  const std::uint64_t n = std::uint64_t{g1.order()} * g2.order();
  check_cap(n);
  const std::uint32_t m = g2.order();
  std::vector<Elem> gens;
  for (Elem a : g1.generators()) gens.push_back(a * m + g2.identity());
  for (Elem b : g2.generators()) gens.push_back(g1.identity() * m + b);
  std::vector<std::string> labels;
  if (g1.has_labels() || g2.has_labels())
    for (Elem i = 0; i < n; ++i) labels.push_back("(" + g1.label(i / m) + "," + g2.label(i % m) + ")");
  return FiniteGroup::from_function(
      static_cast<std::uint32_t>(n),
      [&](Elem a, Elem b) { return g1.mul(a / m, b / m) * m + g2.mul(a % m, b % m); }, gens, labels);
}

FiniteGroup product_any_size(const FiniteGroup& g1, const FiniteGroup& g2) {
  if (std::uint64_t{g1.order()} * g2.order() <= limits().order_cap) return direct_product(g1, g2);
  return FiniteGroup::implicit_product(g1, g2);
}

namespace {

// Smallest element of x*K.
Elem coset_rep(const FiniteGroup& g, const Subgroup& k, Elem x) {
  Elem best = g.order();
  k.members().for_each([&](Elem y) { best = std::min(best, g.mul(x, y)); });
  return best;
}

}  // namespace

GoursatQuintuple goursat(const FiniteGroup& g1, const FiniteGroup& g2, const Subgroup& h) {
  const FiniteGroup& p = h.parent();
  if (std::uint64_t{g1.order()} * g2.order() != p.order())
    fail(ErrorCode::WrongShape, "subgroup does not live in a product of the given factors");
  const std::uint32_t m = g2.order();
  ElementSet pl(g1.order()), kl(g1.order()), pr(g2.order()), kr(g2.order());
  h.members().for_each([&](Elem x) {
    const Elem a = x / m, b = x % m;
    pl.set(a);
    pr.set(b);
    if (b == g2.identity()) kl.set(a);
    if (a == g1.identity()) kr.set(b);
  });
  GoursatQuintuple q{closure_of_set(g1, pl), closure_of_set(g1, kl), closure_of_set(g2, pr), closure_of_set(g2, kr), {}};

  std::map<Elem, Elem> theta;
  h.members().for_each([&](Elem x) {
    const Elem ra = coset_rep(g1, q.ker_left, x / m), rb = coset_rep(g2, q.ker_right, x % m);
    auto [it, fresh] = theta.emplace(ra, rb);
    if (!fresh && it->second != rb) fail(ErrorCode::InvalidGroup, "Goursat correspondence is not a function");
  });
  q.iso.assign(theta.begin(), theta.end());

  // bijective and multiplicative on cosets
  std::map<Elem, Elem> back;
  for (auto [a, b] : q.iso)
    if (!back.emplace(b, a).second) fail(ErrorCode::InvalidGroup, "Goursat correspondence is not injective");
  if (q.iso.size() * q.ker_left.order() != q.proj_left.order() ||
      q.iso.size() * q.ker_right.order() != q.proj_right.order())
    fail(ErrorCode::InvalidGroup, "Goursat quotients differ in order");
  for (auto [a1, b1] : q.iso)
    for (auto [a2, b2] : q.iso) {
      const Elem a = coset_rep(g1, q.ker_left, g1.mul(a1, a2));
      const Elem b = coset_rep(g2, q.ker_right, g2.mul(b1, b2));
      if (theta.at(a) != b) fail(ErrorCode::InvalidGroup, "Goursat correspondence is not a homomorphism");
    }
  return q;
}

Subgroup goursat_reconstruct(const GoursatQuintuple& q, const FiniteGroup& product) {
  const FiniteGroup& g1 = q.proj_left.parent();
  const FiniteGroup& g2 = q.proj_right.parent();
  const std::uint32_t m = g2.order();
  std::map<Elem, Elem> theta(q.iso.begin(), q.iso.end());
  ElementSet s(product.order());
  q.proj_left.members().for_each([&](Elem a) {
    const Elem target = theta.at(coset_rep(g1, q.ker_left, a));
    q.proj_right.members().for_each([&](Elem b) {
      if (coset_rep(g2, q.ker_right, b) == target) s.set(a * m + b);
    });
  });
  return Subgroup::from_members(product, std::move(s));
}

}  // namespace atlas

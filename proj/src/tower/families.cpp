#include <algorithm>
#include <set>
#include <unordered_map>

#include "atlas/config.hpp"
#include "atlas/error.hpp"
#include "atlas/group/constructions.hpp"
#include "atlas/group/operators.hpp"
#include "atlas/tower/tower.hpp"

namespace atlas {

namespace {

// p^e, saturating well above any cap.
std::uint64_t sat_pow(std::uint64_t p, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 40)) return std::uint64_t{1} << 41;
    r *= p;
  }
  return r;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCode::OutOfRange, std::to_string(p) + " is not prime");
}

void require_depth(int d) {
  if (d < 1) fail(ErrorCode::OutOfRange, "depth must be at least 1");
}

void require_cap(std::uint64_t top_order, const std::string& what) {
  if (top_order > limits().order_cap)
    fail(ErrorCode::CapExceeded, what + ": top level order " + std::to_string(top_order) + " exceeds cap " +
                                     std::to_string(limits().order_cap));
}

// Connecting map read off the element codes of both levels.
Homomorphism map_by_codes(const FiniteGroup& up, const std::vector<std::uint64_t>& cu, const FiniteGroup& down,
                          const std::vector<std::uint64_t>& cd, const Tower::Reducer& reduce, int from, int to) {
  std::unordered_map<std::uint64_t, Elem> index;
  for (Elem x = 0; x < cd.size(); ++x) index.emplace(cd[x], x);
  std::vector<Elem> m(up.order());
  for (Elem x = 0; x < up.order(); ++x) {
    auto it = index.find(reduce(cu[x], from, to));
    if (it == index.end()) fail(ErrorCode::InvalidGroup, "reduction leaves the lower level");
    m[x] = it->second;
  }
  return Homomorphism::make(up, down, std::move(m));
}

struct Built {
  std::vector<FiniteGroup> levels;
  std::vector<std::vector<std::uint64_t>> codes;
};

Tower assemble(TowerMeta meta, Built b, const Tower::Reducer& reduce) {
  std::vector<Homomorphism> maps;
  for (std::size_t k = 1; k < b.levels.size(); ++k)
    maps.push_back(map_by_codes(b.levels[k], b.codes[k], b.levels[k - 1], b.codes[k - 1], reduce,
                                static_cast<int>(k + 1), static_cast<int>(k)));
  Tower t(std::move(meta), std::move(b.levels), std::move(maps));
  t.set_codes(std::move(b.codes), reduce);
  return t;
}

std::vector<std::uint64_t> identity_codes(std::uint32_t n) {
  std::vector<std::uint64_t> c(n);
  for (std::uint32_t i = 0; i < n; ++i) c[i] = i;
  return c;
}

std::vector<Subgroup> per_level_closure(const Tower& t, const std::vector<std::string>& element_names) {
  std::vector<Subgroup> out;
  for (int k = 1; k <= t.depth(); ++k) {
    std::vector<Elem> seed;
    for (const auto& n : element_names) seed.push_back(t.element(n, k));
    out.push_back(closure(t.level(k), seed));
  }
  return out;
}

// Packs small nonnegative fields into a code, 16 bits each.
std::uint64_t pack(std::initializer_list<std::uint64_t> fields) {
  std::uint64_t c = 0;
  unsigned shift = 0;
  for (auto f : fields) {
    c |= f << shift;
    shift += 16;
  }
  return c;
}
std::uint64_t field(std::uint64_t c, unsigned i) { return (c >> (16 * i)) & 0xffffu; }

}  // namespace

Tower make_zp(std::uint64_t p, int depth) {
  require_prime(p);
  require_depth(depth);
  require_cap(sat_pow(p, static_cast<std::uint64_t>(depth)), "zp");
  Built b;
  for (int k = 1; k <= depth; ++k) {
    const auto n = static_cast<std::uint32_t>(sat_pow(p, static_cast<std::uint64_t>(k)));
    b.levels.push_back(cyclic(n));
    b.codes.push_back(identity_codes(n));
  }
  TowerMeta meta;
  meta.family = "zp";
  meta.primes = {p};
  meta.flags = {true, true, true, true, false};
  meta.dim_estimate = 1;
  meta.p = p;
  meta.n = 1;
  Tower t = assemble(meta, std::move(b), [p](std::uint64_t c, int, int to) { return c % sat_pow(p, static_cast<std::uint64_t>(to)); });
  std::vector<Subgroup> z;
  for (int k = 1; k <= depth; ++k) z.push_back(Subgroup::whole(t.level(k)));
  t.set_thread("Z", std::move(z));
  return t;
}

Tower make_zpn(std::uint64_t p, std::uint32_t n, int depth) {
  require_prime(p);
  require_depth(depth);
  if (n < 1) fail(ErrorCode::OutOfRange, "rank n must be at least 1");
  require_cap(sat_pow(p, std::uint64_t{n} * static_cast<std::uint64_t>(depth)), "zpn");
  Built b;
  for (int k = 1; k <= depth; ++k) {
    const auto q = static_cast<std::uint32_t>(sat_pow(p, static_cast<std::uint64_t>(k)));
    b.levels.push_back(abelian(std::vector<std::uint32_t>(n, q)));
    b.codes.push_back(identity_codes(b.levels.back().order()));
  }
  TowerMeta meta;
  meta.family = "zpn";
  meta.primes = {p};
  meta.flags = {true, true, n == 1, true, false};
  meta.dim_estimate = static_cast<int>(n);
  meta.p = p;
  meta.n = n;
  // mixed radix, coordinate 0 most significant
  auto reduce = [p, n](std::uint64_t c, int from, int to) {
    const std::uint64_t qf = sat_pow(p, static_cast<std::uint64_t>(from));
    const std::uint64_t qt = sat_pow(p, static_cast<std::uint64_t>(to));
    std::uint64_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      out += (c % qf) % qt * scale;
      c /= qf;
      scale *= qt;
    }
    return out;
  };
  Tower t = assemble(meta, std::move(b), reduce);
  if (n == 1) {
    std::vector<Subgroup> z;
    for (int k = 1; k <= depth; ++k) z.push_back(Subgroup::whole(t.level(k)));
    t.set_thread("Z", std::move(z));
  }
  return t;
}

Tower make_heisenberg(std::uint64_t p, int depth) {
  require_prime(p);
  require_depth(depth);
  require_cap(sat_pow(p, 3ull * static_cast<std::uint64_t>(depth)), "heisenberg");
  Built b;
  for (int k = 1; k <= depth; ++k) {
    const std::uint64_t q = sat_pow(p, static_cast<std::uint64_t>(k));
    // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')
    auto mul = [q](std::uint64_t x, std::uint64_t y) {
      return pack({(field(x, 0) + field(y, 0)) % q, (field(x, 1) + field(y, 1)) % q,
                   (field(x, 2) + field(y, 2) + field(x, 0) * field(y, 1)) % q});
    };
    auto label = [](std::uint64_t c) {
      return "(" + std::to_string(field(c, 0)) + "," + std::to_string(field(c, 1)) + "," + std::to_string(field(c, 2)) + ")";
    };
    std::vector<std::uint64_t> codes;
    b.levels.push_back(group_from_generators({pack({1, 0, 0}), pack({0, 1, 0})}, 0, mul, &codes, label));
    b.codes.push_back(std::move(codes));
  }
  TowerMeta meta;
  meta.family = "heisenberg";
  meta.primes = {p};
  meta.flags = {false, true, false, true, false};
  meta.dim_estimate = 3;
  meta.p = p;
  auto reduce = [p](std::uint64_t c, int, int to) {
    const std::uint64_t q = sat_pow(p, static_cast<std::uint64_t>(to));
    return pack({field(c, 0) % q, field(c, 1) % q, field(c, 2) % q});
  };
  return assemble(meta, std::move(b), reduce);
}

Tower make_dihedral2(int depth) {
  require_depth(depth);
  require_cap(sat_pow(2, static_cast<std::uint64_t>(depth) + 1), "dihedral2");
  Built b;
  for (int k = 1; k <= depth; ++k) {
    b.levels.push_back(dihedral(static_cast<std::uint32_t>(sat_pow(2, static_cast<std::uint64_t>(k)))));
    b.codes.push_back(identity_codes(b.levels.back().order()));
  }
  TowerMeta meta;
  meta.family = "dihedral2";
  meta.primes = {2};
  meta.flags = {false, false, true, true, true};
  meta.dim_estimate = 1;
  meta.p = 2;
  // index a + n*x for r^a s^x with n = 2^level
  auto reduce = [](std::uint64_t c, int from, int to) {
    const std::uint64_t nf = sat_pow(2, static_cast<std::uint64_t>(from)), nt = sat_pow(2, static_cast<std::uint64_t>(to));
    return (c % nf) % nt + nt * (c / nf);
  };
  Tower t = assemble(meta, std::move(b), reduce);
  std::vector<Elem> r, s;
  std::vector<Subgroup> z;
  for (int k = 1; k <= depth; ++k) {
    r.push_back(1);
    s.push_back(static_cast<Elem>(sat_pow(2, static_cast<std::uint64_t>(k))));
    const Elem gen[] = {1};
    z.push_back(closure(t.level(k), gen));
  }
  t.set_element("r", r);
  t.set_element("s", s);
  t.set_thread("Z", std::move(z));
  return t;
}

Mat2 pirim_matrix() { return {{{0, 1}, {4, 2}}}; }

Mat2 mat_mul_mod(const Mat2& a, const Mat2& b, std::int64_t m) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      std::int64_t s = 0;
      for (int k = 0; k < 2; ++k) s += a[i][k] * b[k][j];
      s %= m;
      c[i][j] = s < 0 ? s + m : s;
    }
  return c;
}

Mat2 mat_pow_mod(const Mat2& a, std::uint64_t e, std::int64_t m) {
  Mat2 r{{{1 % m, 0}, {0, 1 % m}}};
  Mat2 base = mat_mul_mod(a, {{{1, 0}, {0, 1}}}, m);
  while (e != 0) {
    if (e & 1u) r = mat_mul_mod(r, base, m);
    base = mat_mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

std::uint32_t pirim_exponent() {
  const Mat2 id{{{1, 0}, {0, 1}}};
  Mat2 x = pirim_matrix();
  for (std::uint32_t m = 1; m <= 81; ++m) {
    if (mat_mul_mod(x, id, 3) == id) return m;
    x = mat_mul_mod(x, pirim_matrix(), 3);
  }
  fail(ErrorCode::RelationCheckFailed, "A has no power in the first congruence subgroup mod 3");
}

Tower make_pirim(int depth) {
  require_depth(depth);
  require_cap(sat_pow(3, 3ull * static_cast<std::uint64_t>(depth) - 1), "pirim");
  const Mat2 a = pirim_matrix();
  if (a[0][0] * a[1][1] - a[0][1] * a[1][0] != -4) fail(ErrorCode::RelationCheckFailed, "det(A) must be -4");
  const std::uint32_t m = pirim_exponent();

  Built b;
  std::vector<std::uint64_t> orders_t;  // order of A1 mod 3^k
  for (int k = 1; k <= depth; ++k) {
    const auto q = static_cast<std::int64_t>(sat_pow(3, static_cast<std::uint64_t>(k)));
    const Mat2 a1 = mat_pow_mod(a, m, q);
    if (mat_pow_mod(a, m, 3) != Mat2{{{1, 0}, {0, 1}}}) fail(ErrorCode::RelationCheckFailed, "A1 is not I mod 3");
    std::vector<Mat2> powers{mat_pow_mod(a1, 0, q)};
    while (true) {
      Mat2 next = mat_mul_mod(powers.back(), a1, q);
      if (next == powers.front()) break;
      powers.push_back(next);
    }
    const std::uint64_t ord = powers.size();
    orders_t.push_back(ord);
    // (v,i)(w,j) = (v + A1^i w, i+j)
    auto mul = [powers, q, ord](std::uint64_t x, std::uint64_t y) {
      const Mat2& p = powers[field(x, 2)];
      const auto w0 = static_cast<std::int64_t>(field(y, 0)), w1 = static_cast<std::int64_t>(field(y, 1));
      const std::int64_t v0 = (static_cast<std::int64_t>(field(x, 0)) + p[0][0] * w0 + p[0][1] * w1) % q;
      const std::int64_t v1 = (static_cast<std::int64_t>(field(x, 1)) + p[1][0] * w0 + p[1][1] * w1) % q;
      return pack({static_cast<std::uint64_t>(v0), static_cast<std::uint64_t>(v1), (field(x, 2) + field(y, 2)) % ord});
    };
    auto label = [](std::uint64_t c) {
      return "(" + std::to_string(field(c, 0)) + "," + std::to_string(field(c, 1)) + ";t^" + std::to_string(field(c, 2)) + ")";
    };
    std::vector<std::uint64_t> codes;
    b.levels.push_back(
        group_from_generators({pack({1, 0, 0}), pack({0, 1, 0}), pack({0, 0, 1 % ord})}, 0, mul, &codes, label));
    b.codes.push_back(std::move(codes));
  }
  for (std::size_t k = 1; k < orders_t.size(); ++k)
    if (orders_t[k] % orders_t[k - 1] != 0) fail(ErrorCode::RelationCheckFailed, "order of A1 does not grow by divisibility");

  TowerMeta meta;
  meta.family = "pirim";
  meta.primes = {3};
  meta.flags = {false, false, false, true, false};
  meta.dim_estimate = 3;
  meta.p = 3;
  meta.pirim_m = m;
  auto reduce = [orders_t](std::uint64_t c, int, int to) {
    const std::uint64_t q = sat_pow(3, static_cast<std::uint64_t>(to));
    return pack({field(c, 0) % q, field(c, 1) % q, field(c, 2) % orders_t[static_cast<std::size_t>(to - 1)]});
  };
  Tower t = assemble(meta, std::move(b), reduce);

  std::unordered_map<std::uint64_t, Elem> idx;
  std::vector<Elem> e1, e2, tt;
  for (int k = 1; k <= depth; ++k) {
    idx.clear();
    const auto& c = *t.codes(k);
    for (Elem x = 0; x < c.size(); ++x) idx.emplace(c[x], x);
    e1.push_back(idx.at(pack({1, 0, 0})));
    e2.push_back(idx.at(pack({0, 1, 0})));
    tt.push_back(idx.at(pack({0, 0, 1 % orders_t[static_cast<std::size_t>(k - 1)]})));
  }
  t.set_element("e1", e1);
  t.set_element("e2", e2);
  t.set_element("t", tt);
  t.set_thread("H", per_level_closure(t, {"e1", "e2"}));
  return t;
}

Tower make_wilson(int depth) {
  require_depth(depth);
  require_cap(sat_pow(2, 3ull * static_cast<std::uint64_t>(depth) - 1), "wilson");
  // code: v0, v1, v2, sign mask (bit i set = coordinate i negated)
  constexpr std::uint64_t kSigma1 = 0b110, kSigma2 = 0b101;
  Built b;
  for (int k = 1; k <= depth; ++k) {
    const std::uint64_t q = sat_pow(2, static_cast<std::uint64_t>(k));
    // (v;s)(w;t) = (v + s.w; st)
    auto mul = [q](std::uint64_t x, std::uint64_t y) {
      const std::uint64_t s = field(x, 3);
      std::uint64_t v[3];
      for (unsigned i = 0; i < 3; ++i) {
        const std::uint64_t w = field(y, i);
        const std::uint64_t sw = ((s >> i) & 1u) ? (q - w) % q : w;
        v[i] = (field(x, i) + sw) % q;
      }
      return pack({v[0], v[1], v[2], s ^ field(y, 3)});
    };
    auto label = [](std::uint64_t c) {
      return "(" + std::to_string(field(c, 0)) + "," + std::to_string(field(c, 1)) + "," + std::to_string(field(c, 2)) +
             ";" + std::to_string(field(c, 3)) + ")";
    };
    std::vector<std::uint64_t> codes;
    const std::uint64_t x1 = pack({1 % q, 0, 1 % q, kSigma1}), x2 = pack({0, 1 % q, 0, kSigma2});
    b.levels.push_back(group_from_generators({x1, x2}, 0, mul, &codes, label));
    if (b.levels.back().order() != sat_pow(2, 3ull * static_cast<std::uint64_t>(k) - 1))
      fail(ErrorCode::RelationCheckFailed, "level " + std::to_string(k) + " has the wrong order");
    b.codes.push_back(std::move(codes));
  }
  TowerMeta meta;
  meta.family = "wilson";
  meta.primes = {2};
  meta.flags = {false, false, false, true, false};
  meta.dim_estimate = 3;
  meta.p = 2;
  auto reduce = [](std::uint64_t c, int, int to) {
    const std::uint64_t q = sat_pow(2, static_cast<std::uint64_t>(to));
    return pack({field(c, 0) % q, field(c, 1) % q, field(c, 2) % q, field(c, 3)});
  };
  Tower t = assemble(meta, std::move(b), reduce);

  std::vector<Elem> x1s, x2s, a1s, a2s, a3s, x12s;
  for (int k = 1; k <= depth; ++k) {
    const FiniteGroup& g = t.level(k);
    const auto& codes = *t.codes(k);
    std::unordered_map<std::uint64_t, Elem> idx;
    for (Elem x = 0; x < codes.size(); ++x) idx.emplace(codes[x], x);
    const std::uint64_t q = sat_pow(2, static_cast<std::uint64_t>(k));
    const Elem x1 = idx.at(pack({1 % q, 0, 1 % q, kSigma1})), x2 = idx.at(pack({0, 1 % q, 0, kSigma2}));
    const Elem x12 = g.mul(x1, x2);
    const Elem a1 = g.mul(x1, x1), a2 = g.mul(x2, x2), a3 = g.mul(x12, x12);
    // (x^2)^y = x^-2 with u^v = v^-1 u v
    const auto rel = [&](Elem x, Elem y) { return g.conj(g.mul(x, x), y) == g.inv(g.mul(x, x)); };
    if (!rel(x1, x2) || !rel(x2, x1) || !rel(x12, x1))
      fail(ErrorCode::RelationCheckFailed, "presentation relation fails at level " + std::to_string(k));
    const std::uint64_t two = 2 % q;
    if (codes[a1] != pack({two, 0, 0, 0}) || codes[a2] != pack({0, two, 0, 0}) || codes[a3] != pack({0, 0, two, 0}))
      fail(ErrorCode::RelationCheckFailed, "a_i != 2e_i at level " + std::to_string(k));
    x1s.push_back(x1);
    x2s.push_back(x2);
    x12s.push_back(x12);
    a1s.push_back(a1);
    a2s.push_back(a2);
    a3s.push_back(a3);
  }
  t.set_element("x1", x1s);
  t.set_element("x2", x2s);
  t.set_element("x1x2", x12s);
  t.set_element("a1", a1s);
  t.set_element("a2", a2s);
  t.set_element("a3", a3s);
  t.set_thread("A", per_level_closure(t, {"a1", "a2", "a3"}));
  t.set_thread("M1", per_level_closure(t, {"x1", "a1", "a2", "a3"}));
  t.set_thread("M2", per_level_closure(t, {"x2", "a1", "a2", "a3"}));
  t.set_thread("M3", per_level_closure(t, {"x1x2", "a1", "a2", "a3"}));
  return t;
}

namespace {

Tower product_impl(const std::vector<Tower>& towers, bool disjoint_primes) {
  if (towers.empty()) fail(ErrorCode::WrongShape, "product needs at least one factor");
  const int depth = towers.front().depth();
  std::set<std::uint64_t> primes;
  std::size_t prime_count = 0;
  for (const auto& t : towers) {
    if (t.depth() != depth) fail(ErrorCode::DepthMismatch, "product factors must share one depth");
    for (auto p : t.meta().primes) {
      primes.insert(p);
      ++prime_count;
    }
  }
  if (disjoint_primes && primes.size() != prime_count) fail(ErrorCode::PrimeOverlap, "product factors share a prime");
  std::uint64_t top = 1;
  for (const auto& t : towers) top *= t.level(depth).order();
  if (top > limits().product_cap)
    fail(ErrorCode::CapExceeded, "product top level order " + std::to_string(top) + " exceeds product cap " +
                                     std::to_string(limits().product_cap));

  std::vector<FiniteGroup> levels;
  for (int k = 1; k <= depth; ++k) {
    FiniteGroup g = towers.front().level(k);
    for (std::size_t i = 1; i < towers.size(); ++i) g = product_any_size(g, towers[i].level(k));
    levels.push_back(g);
  }
  std::vector<Homomorphism> maps;
  for (int k = 1; k < depth; ++k) {
    const std::uint32_t n = levels[static_cast<std::size_t>(k)].order();
    std::vector<Elem> m(n);
    std::vector<Elem> digits(towers.size());
    for (Elem x = 0; x < n; ++x) {
      Elem rest = x;
      for (std::size_t i = towers.size(); i-- > 0;) {
        const std::uint32_t o = towers[i].level(k + 1).order();
        digits[i] = towers[i].map(k)(rest % o);
        rest /= o;
      }
      Elem y = 0;
      for (std::size_t i = 0; i < towers.size(); ++i) y = y * towers[i].level(k).order() + digits[i];
      m[x] = y;
    }
    maps.push_back(Homomorphism::make(levels[static_cast<std::size_t>(k)], levels[static_cast<std::size_t>(k - 1)], std::move(m)));
  }

  TowerMeta meta;
  meta.family = "product";
  meta.primes.assign(primes.begin(), primes.end());
  meta.flags.abelian = meta.flags.nilpotent = meta.flags.finitely_generated = true;
  int dim = 0;
  bool dim_known = true;
  for (const auto& t : towers) {
    meta.flags.abelian &= t.meta().flags.abelian;
    meta.flags.nilpotent &= t.meta().flags.nilpotent;
    meta.flags.finitely_generated &= t.meta().flags.finitely_generated;
    if (t.meta().dim_estimate) dim += *t.meta().dim_estimate;
    else dim_known = false;
  }
  if (towers.size() == 1) meta.flags = towers.front().meta().flags;
  if (dim_known) meta.dim_estimate = dim;
  Tower out(std::move(meta), std::move(levels), std::move(maps));
  out.set_factors(towers);
  return out;
}

}  // namespace

Tower make_product(const std::vector<Tower>& towers) { return product_impl(towers, true); }

Tower make_product_shared_primes(const std::vector<Tower>& towers) { return product_impl(towers, false); }

Tower make_custom(std::vector<FiniteGroup> levels, std::vector<Homomorphism> maps, TowerFlags flags) {
  TowerMeta meta;
  meta.family = "custom";
  meta.flags = flags;
  std::set<std::uint64_t> primes;
  for (const auto& g : levels)
    for (auto p : g.primes()) primes.insert(p);
  meta.primes.assign(primes.begin(), primes.end());
  return Tower(std::move(meta), std::move(levels), std::move(maps));
}

}  // namespace atlas

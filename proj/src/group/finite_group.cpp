#include "atlas/group/finite_group.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <unordered_map>

#include "atlas/config.hpp"
#include "atlas/error.hpp"

namespace atlas {

namespace detail {

struct GroupData {
  std::uint32_t order = 1;
  Elem identity = 0;
  std::vector<std::uint16_t> table;
  std::vector<Elem> inverse;
  std::vector<Elem> generators;
  std::vector<std::string> labels;
  std::vector<std::uint64_t> primes;
  bool abelian = true;

  bool implicit = false;
  // optional: a default FiniteGroup would recurse into the trivial group's data
  std::optional<FiniteGroup> left;
  std::optional<FiniteGroup> right;
  std::uint32_t right_order = 1;
};

}  // namespace detail

namespace {

std::shared_ptr<const detail::GroupData> trivial_data() {
  static const auto d = [] {
    auto g = std::make_shared<detail::GroupData>();
    g->table = {0};
    g->inverse = {0};
    return g;
  }();
  return d;
}

[[noreturn]] void invalid(const std::string& what) { fail(ErrorCode::InvalidGroup, what); }

// Every element must be a left-nested product of generators.
bool generators_generate(std::uint32_t n, Elem identity, const std::vector<std::uint16_t>& t,
                         const std::vector<Elem>& gens) {
  std::vector<char> seen(n, 0);
  std::vector<Elem> queue{identity};
  seen[identity] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Elem x = queue[head];
    for (Elem g : gens) {
      const Elem y = t[static_cast<std::size_t>(x) * n + g];
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return queue.size() == n;
}

bool associative(std::uint32_t n, const std::vector<std::uint16_t>& t, const std::vector<Elem>& gens) {
  const auto at = [&](Elem a, Elem b) -> Elem { return t[static_cast<std::size_t>(a) * n + b]; };
  const Limits& lim = limits();
  if (n <= lim.exhaustive_assoc_limit) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        const Elem ab = at(a, b);
        for (Elem c = 0; c < n; ++c)
          if (at(ab, c) != at(a, at(b, c))) return false;
      }
    return true;
  }
  // Light's test: the elements g with (xg)y = x(gy) for all x,y are closed
  // under products, so checking the generators is exact once they generate.
  for (Elem g : gens)
    for (Elem x = 0; x < n; ++x) {
      const Elem xg = at(x, g);
      for (Elem y = 0; y < n; ++y)
        if (at(xg, y) != at(x, at(g, y))) return false;
    }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<Elem> pick(0, n - 1);
  for (std::uint64_t i = 0; i < lim.random_assoc_triples; ++i) {
    const Elem a = pick(rng), b = pick(rng), c = pick(rng);
    if (at(at(a, b), c) != at(a, at(b, c))) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

FiniteGroup::FiniteGroup() : data_(trivial_data()) {}

FiniteGroup FiniteGroup::from_table(std::uint32_t order, std::vector<std::uint16_t> table,
                                    std::vector<Elem> generators, std::vector<std::string> labels) {
  if (order == 0) invalid("order must be positive");
  if (order > limits().order_cap)
    fail(ErrorCode::CapExceeded, "group order " + std::to_string(order) + " exceeds cap " +
                                     std::to_string(limits().order_cap));
  const std::size_t n = order;
  if (table.size() != n * n) invalid("table must have order^2 entries");
  if (!labels.empty() && labels.size() != n) invalid("labels must cover every element");
  for (auto v : table)
    if (v >= order) invalid("table entry out of range");
  for (Elem g : generators)
    if (g >= order) invalid("generator out of range");

  // Latin square
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t tick = 0;
  for (std::size_t r = 0; r < n; ++r) {
    ++tick;
    for (std::size_t c = 0; c < n; ++c) {
      auto& s = stamp[table[r * n + c]];
      if (s == tick) invalid("row " + std::to_string(r) + " is not a permutation");
      s = tick;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    ++tick;
    for (std::size_t r = 0; r < n; ++r) {
      auto& s = stamp[table[r * n + c]];
      if (s == tick) invalid("column " + std::to_string(c) + " is not a permutation");
      s = tick;
    }
  }

  Elem identity = order;
  for (Elem e = 0; e < order && identity == order; ++e) {
    bool ok = true;
    for (Elem x = 0; x < order && ok; ++x)
      ok = table[static_cast<std::size_t>(e) * n + x] == x && table[static_cast<std::size_t>(x) * n + e] == x;
    if (ok) identity = e;
  }
  if (identity == order) invalid("no two-sided identity");

  std::vector<Elem> inverse(n, order);
  for (Elem a = 0; a < order; ++a)
    for (Elem b = 0; b < order; ++b)
      if (table[static_cast<std::size_t>(a) * n + b] == identity) {
        if (table[static_cast<std::size_t>(b) * n + a] != identity) invalid("left and right inverses differ");
        inverse[a] = b;
        break;
      }

  // drop identity and duplicate generators; keep first occurrence order
  std::vector<Elem> gens;
  for (Elem g : generators)
    if (g != identity && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  if (!generators_generate(order, identity, table, gens)) invalid("generators do not generate the group");
  if (!associative(order, table, gens)) invalid("multiplication is not associative");

  auto d = std::make_shared<detail::GroupData>();
  d->order = order;
  d->identity = identity;
  d->table = std::move(table);
  d->inverse = std::move(inverse);
  d->generators = std::move(gens);
  d->labels = std::move(labels);
  d->primes = prime_divisors(order);
  for (Elem a : d->generators)
    for (Elem b : d->generators)
      if (d->table[static_cast<std::size_t>(a) * n + b] != d->table[static_cast<std::size_t>(b) * n + a])
        d->abelian = false;
  return FiniteGroup(std::move(d));
}

FiniteGroup FiniteGroup::from_function(std::uint32_t order, const MulFn& mul, std::vector<Elem> generators,
                                       std::vector<std::string> labels) {
  if (order > limits().order_cap)
    fail(ErrorCode::CapExceeded, "group order " + std::to_string(order) + " exceeds cap " +
                                     std::to_string(limits().order_cap));
  std::vector<std::uint16_t> table(static_cast<std::size_t>(order) * order);
  for (Elem a = 0; a < order; ++a)
    for (Elem b = 0; b < order; ++b) {
      const Elem c = mul(a, b);
      if (c >= order) invalid("multiplication result out of range");
      table[static_cast<std::size_t>(a) * order + b] = static_cast<std::uint16_t>(c);
    }
  return from_table(order, std::move(table), std::move(generators), std::move(labels));
}

FiniteGroup FiniteGroup::implicit_product(const FiniteGroup& left, const FiniteGroup& right) {
  const std::uint64_t n = std::uint64_t{left.order()} * right.order();
  if (n > limits().product_cap)
    fail(ErrorCode::CapExceeded,
         "product order " + std::to_string(n) + " exceeds product cap " + std::to_string(limits().product_cap));
  auto d = std::make_shared<detail::GroupData>();
  d->order = static_cast<std::uint32_t>(n);
  d->implicit = true;
  d->left = left;
  d->right = right;
  d->right_order = right.order();
  d->identity = left.identity() * right.order() + right.identity();
  for (Elem g : left.generators()) d->generators.push_back(g * right.order() + right.identity());
  for (Elem h : right.generators()) d->generators.push_back(left.identity() * right.order() + h);
  d->primes = prime_divisors(n);
  d->abelian = left.is_abelian() && right.is_abelian();
  return FiniteGroup(std::move(d));
}

std::uint32_t FiniteGroup::order() const { return data_->order; }
Elem FiniteGroup::identity() const { return data_->identity; }

Elem FiniteGroup::mul(Elem a, Elem b) const {
  const auto& d = *data_;
  if (!d.implicit) return d.table[static_cast<std::size_t>(a) * d.order + b];
  const std::uint32_t m = d.right_order;
  return d.left->mul(a / m, b / m) * m + d.right->mul(a % m, b % m);
}

Elem FiniteGroup::inv(Elem a) const {
  const auto& d = *data_;
  if (!d.implicit) return d.inverse[a];
  const std::uint32_t m = d.right_order;
  return d.left->inv(a / m) * m + d.right->inv(a % m);
}

Elem FiniteGroup::pow(Elem a, std::uint64_t e) const {
  Elem result = identity();
  Elem base = a;
  while (e != 0) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::uint32_t FiniteGroup::element_order(Elem a) const {
  std::uint32_t k = 1;
  for (Elem x = a; x != identity(); x = mul(x, a)) ++k;
  return k;
}

std::span<const Elem> FiniteGroup::generators() const { return data_->generators; }

std::string FiniteGroup::label(Elem e) const {
  const auto& d = *data_;
  if (d.implicit) {
    const std::uint32_t m = d.right_order;
    return "(" + d.left->label(e / m) + "," + d.right->label(e % m) + ")";
  }
  if (!d.labels.empty()) return d.labels[e];
  return std::to_string(e);
}

bool FiniteGroup::has_labels() const {
  return data_->implicit ? (data_->left->has_labels() || data_->right->has_labels()) : !data_->labels.empty();
}

std::span<const std::uint64_t> FiniteGroup::primes() const { return data_->primes; }
bool FiniteGroup::is_implicit_product() const { return data_->implicit; }
bool FiniteGroup::has_table() const { return !data_->implicit; }

const FiniteGroup& FiniteGroup::left_factor() const {
  if (!data_->implicit) fail(ErrorCode::WrongShape, "group is not an implicit product");
  return *data_->left;
}

const FiniteGroup& FiniteGroup::right_factor() const {
  if (!data_->implicit) fail(ErrorCode::WrongShape, "group is not an implicit product");
  return *data_->right;
}

bool FiniteGroup::is_abelian() const { return data_->abelian; }

FiniteGroup group_from_generators(const std::vector<std::uint64_t>& generator_codes, std::uint64_t identity_code,
                                  const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& mul,
                                  std::vector<std::uint64_t>* codes_out,
                                  const std::function<std::string(std::uint64_t)>& label) {
  const std::uint32_t cap = limits().order_cap;
  std::vector<std::uint64_t> gens;
  for (auto g : generator_codes)
    if (g != identity_code && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);

  // BFS in code space, remembering each element's parent and generator.
  std::unordered_map<std::uint64_t, std::uint32_t> bfs_index{{identity_code, 0}};
  std::vector<std::uint64_t> bfs_codes{identity_code};
  std::vector<std::uint32_t> parent{0};
  std::vector<std::uint32_t> via{0};
  for (std::size_t head = 0; head < bfs_codes.size(); ++head) {
    for (std::uint32_t gi = 0; gi < gens.size(); ++gi) {
      const std::uint64_t y = mul(bfs_codes[head], gens[gi]);
      if (bfs_index.emplace(y, static_cast<std::uint32_t>(bfs_codes.size())).second) {
        if (bfs_codes.size() >= cap)
          fail(ErrorCode::CapExceeded, "generated group exceeds order cap " + std::to_string(cap));
        bfs_codes.push_back(y);
        parent.push_back(static_cast<std::uint32_t>(head));
        via.push_back(gi);
      }
    }
  }
  const auto n = static_cast<std::uint32_t>(bfs_codes.size());

  // Final numbering: identity first, then ascending code.
  std::vector<std::uint64_t> sorted(bfs_codes.begin() + 1, bfs_codes.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.insert(sorted.begin(), identity_code);
  std::unordered_map<std::uint64_t, std::uint32_t> final_index;
  final_index.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) final_index.emplace(sorted[i], i);
  std::vector<std::uint32_t> bfs_to_final(n);
  for (std::uint32_t i = 0; i < n; ++i) bfs_to_final[i] = final_index.at(bfs_codes[i]);

  // Right multiplication by each generator, in final numbering.
  std::vector<std::vector<std::uint32_t>> right(gens.size(), std::vector<std::uint32_t>(n));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::size_t gi = 0; gi < gens.size(); ++gi) right[gi][i] = final_index.at(mul(sorted[i], gens[gi]));

  // x*y = (x*parent(y))*g, filled in BFS order of y.
  std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t x = 0; x < n; ++x) table[static_cast<std::size_t>(x) * n] = static_cast<std::uint16_t>(x);
  for (std::uint32_t b = 1; b < n; ++b) {
    const std::uint32_t y = bfs_to_final[b];
    const std::uint32_t py = bfs_to_final[parent[b]];
    const auto& r = right[via[b]];
    for (std::uint32_t x = 0; x < n; ++x)
      table[static_cast<std::size_t>(x) * n + y] = static_cast<std::uint16_t>(r[table[static_cast<std::size_t>(x) * n + py]]);
  }

  std::vector<Elem> gen_idx;
  for (auto g : gens) gen_idx.push_back(final_index.at(g));
  std::vector<std::string> labels;
  if (label) {
    labels.reserve(n);
    for (auto c : sorted) labels.push_back(label(c));
  }
  if (codes_out) *codes_out = sorted;
  return FiniteGroup::from_table(n, std::move(table), std::move(gen_idx), std::move(labels));
}

}  // namespace atlas

#include "rqf/classgroup.hpp"

#include <algorithm>
#include <atomic>

#include "field_cache.hpp"
#include "rqf/errors.hpp"
#include "rqf/snf.hpp"
#include "rqf/units.hpp"

namespace rqf {

namespace {

std::atomic<std::int64_t> g_cap{10'000'000};

std::uint64_t key_of(std::int64_t a, std::int64_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

// Smallest-prime-factor table shared by all fields, grown on demand.
class SpfTable {
 public:
  std::shared_ptr<const std::vector<std::uint32_t>> get(std::uint32_t n) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!table_ || table_->size() <= n) {
      std::uint32_t size = std::max<std::uint32_t>(n + 1, 1u << 16);
      auto t = std::make_shared<std::vector<std::uint32_t>>(size, 0);
      auto& v = *t;
      for (std::uint32_t i = 2; i < size; ++i) {
        if (v[i]) continue;
        for (std::uint64_t j = i; j < size; j += i)
          if (!v[j]) v[j] = i;
      }
      table_ = std::move(t);
    }
    return table_;
  }

 private:
  std::mutex mu_;
  std::shared_ptr<const std::vector<std::uint32_t>> table_;
};

SpfTable& spf_table() {
  static SpfTable t;
  return t;
}

void divisors_of(std::uint32_t n, const std::vector<std::uint32_t>& spf,
                 std::vector<std::uint32_t>& out) {
  out.assign(1, 1);
  while (n > 1) {
    std::uint32_t q = spf[n];
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    const std::size_t base = out.size();
    std::uint32_t pw = 1;
    for (int i = 0; i < e; ++i) {
      pw *= q;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pw);
    }
  }
}

}  // namespace

std::int64_t discriminant_cap() { return g_cap.load(); }
void set_discriminant_cap(std::int64_t cap) { g_cap.store(cap); }

std::vector<std::int64_t> ClassGroupStructure::p_part(std::int64_t p) const {
  std::vector<std::int64_t> out;
  for (auto d : cyclic_orders) {
    std::int64_t q = 1;
    while (d % p == 0) {
      d /= p;
      q *= p;
    }
    if (q > 1) out.push_back(q);
  }
  return out;
}

ClassGroup::ClassGroup(const QuadraticField& k) : disc_(k.disc()) {
  if (disc_ > discriminant_cap())
    throw Error(ErrorKind::DiscriminantTooLarge,
                "D=" + std::to_string(disc_) + " exceeds cap " + std::to_string(discriminant_cap()));
  const std::int64_t d = disc_;
  s_ = to_i64(k.sqrt_disc_floor());
  const std::int64_t s = s_;

  // Reduced ideals: 1 <= b <= s, b = D (mod 2), a | (D - b^2)/4, s - b < 2a <= s + b.
  std::vector<ReducedIdeal> all;
  auto spf = spf_table().get(static_cast<std::uint32_t>(d / 4 + 1));
  std::vector<std::uint32_t> divs;
  for (std::int64_t b = (d & 1) ? 1 : 2; b <= s; b += 2) {
    const auto n = static_cast<std::uint32_t>((d - b * b) / 4);
    divisors_of(n, *spf, divs);
    for (auto a : divs) {
      const std::int64_t two_a = 2 * static_cast<std::int64_t>(a);
      if (s - b < two_a && two_a <= s + b) all.push_back({a, b});
    }
  }
  index_.reserve(all.size() * 2);
  for (const auto& r : all) index_.emplace(key_of(r.a, r.b), std::make_pair(-1, 0u));

  auto run_cycle = [&](ReducedIdeal start) {
    const int id = static_cast<int>(cycles_.size());
    std::vector<ReducedIdeal> cyc;
    ReducedIdeal cur = start;
    do {
      auto& slot = index_.at(key_of(cur.a, cur.b));
      slot = {id, static_cast<std::uint32_t>(cyc.size())};
      cyc.push_back(cur);
      const std::int64_t c = (cur.b * cur.b - d) / (4 * cur.a);
      const std::int64_t a2 = -c;
      const std::int64_t two = 2 * a2;
      std::int64_t r = (s + cur.b) % two;
      cur = {a2, s - r};
    } while (cur.a != start.a || cur.b != start.b);
    cycles_.push_back(std::move(cyc));
  };

  const std::int64_t b0 = (s - d) % 2 == 0 ? s : s - 1;
  run_cycle({1, b0});
  for (const auto& r : all)
    if (index_.at(key_of(r.a, r.b)).first < 0) run_cycle(r);
}

std::pair<int, std::size_t> ClassGroup::locate(const Ideal& reduced) const {
  const Int s(static_cast<long>(s_));
  Int bw = s - mod(s - reduced.b, 2 * reduced.a);
  if (!reduced.a.fits_slong_p()) throw Error(ErrorKind::InvalidArgument, "ideal is not reduced");
  auto it = index_.find(key_of(reduced.a.get_si(), bw.get_si()));
  if (it == index_.end()) throw Error(ErrorKind::InvalidArgument, "ideal is not reduced");
  return {it->second.first, it->second.second};
}

int ClassGroup::class_of(const Ideal& I) const { return locate(reduce_ideal(I)).first; }

Ideal ClassGroup::representative(int c) const {
  const auto& r = cycles_.at(static_cast<std::size_t>(c)).front();
  return make_ideal(Int(static_cast<long>(r.a)), Int(static_cast<long>(r.b)), disc_);
}

int ClassGroup::mul(int c1, int c2) const {
  if (c1 == 0) return c2;
  if (c2 == 0) return c1;
  IdealProduct p = multiply(representative(c1), representative(c2));
  return class_of(p.ideal);
}

int ClassGroup::inverse(int c) const { return c == 0 ? 0 : class_of(conj(representative(c))); }

int ClassGroup::pow(int c, std::int64_t e) const {
  if (e < 0) {
    c = inverse(c);
    e = -e;
  }
  e %= h();
  int r = 0;
  int base = c;
  while (e) {
    if (e & 1) r = mul(r, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return r;
}

std::int64_t ClassGroup::order(int c) const {
  std::int64_t n = 1;
  for (int x = c; x != 0; x = mul(x, c)) ++n;
  return n;
}

void ClassGroup::build_generators() const {
  const auto& cyc = principal_cycle();
  const Int d(static_cast<long>(disc_));
  suffix_.assign(cyc.size(), QuadInt{});
  QuadFrac acc{1, 0, 1, disc_};
  for (std::size_t i = cyc.size(); i-- > 0;) {
    const Int a(static_cast<long>(cyc[i].a)), b(static_cast<long>(cyc[i].b));
    Int c = (b * b - d) / (4 * a);
    acc = QuadFrac{b, 1, 2 * c, disc_} * acc;
    suffix_[i] = to_int(acc);
  }
}

QuadInt ClassGroup::cycle_unit() const {
  std::call_once(generators_once_, [this] { build_generators(); });
  return suffix_[0];
}

std::optional<QuadInt> ClassGroup::generator(const TrackedIdeal& t) const {
  TrackedIdeal r = reduce(t);
  auto [cyc, pos] = locate(r.ideal);
  if (cyc != 0) return std::nullopt;
  std::call_once(generators_once_, [this] { build_generators(); });
  return to_int(r.factor * to_frac(suffix_[pos]));
}

void ClassGroup::build_structure() const {
  const std::int64_t hh = h();
  structure_.h = hh;
  dlog_.assign(static_cast<std::size_t>(hh), {});
  if (hh == 1) return;

  // Grow a subgroup with classes of small primes, recording relations.
  std::vector<std::vector<std::int64_t>> vec(static_cast<std::size_t>(hh));
  std::vector<bool> known(static_cast<std::size_t>(hh), false);
  std::vector<int> members{0};
  known[0] = true;
  std::vector<int> gens;
  std::vector<std::vector<std::int64_t>> rows;
  const Int d(static_cast<long>(disc_));
  const std::int64_t bound = std::max<std::int64_t>(1000, 4 * s_);

  for (std::int64_t q = 2; static_cast<std::int64_t>(members.size()) < hh; ++q) {
    if (q > bound) throw Error(ErrorKind::GeneratorSearchFailed, "class group generators not found");
    if (!is_prime_u64(static_cast<std::uint64_t>(q)) || kronecker(d, Int(static_cast<long>(q))) == -1)
      continue;
    const int g = class_of(make_ideal(Int(static_cast<long>(q)),
                                      *sqrt_disc_mod_4q(d, Int(static_cast<long>(q))), disc_));
    if (known[static_cast<std::size_t>(g)]) continue;
    const std::size_t col = gens.size();
    gens.push_back(g);
    for (int mi : members) vec[static_cast<std::size_t>(mi)].resize(col + 1, 0);
    std::vector<int> powers{0, g};
    int x = g;
    std::int64_t j = 1;
    while (!known[static_cast<std::size_t>(x)]) {
      x = mul(x, g);
      ++j;
      powers.push_back(x);
    }
    std::vector<std::int64_t> row(col + 1, 0);
    for (std::size_t i = 0; i < col; ++i) row[i] = -vec[static_cast<std::size_t>(x)][i];
    row[col] = j;
    rows.push_back(row);
    const std::size_t old = members.size();
    for (std::size_t mi = 0; mi < old; ++mi) {
      const int y = members[mi];
      for (std::int64_t i = 1; i < j; ++i) {
        const int z = mul(y, powers[static_cast<std::size_t>(i)]);
        auto v = vec[static_cast<std::size_t>(y)];
        v.resize(col + 1, 0);
        v[col] = i;
        vec[static_cast<std::size_t>(z)] = std::move(v);
        known[static_cast<std::size_t>(z)] = true;
        members.push_back(z);
      }
    }
  }

  const std::size_t n = gens.size();
  Matrix R(rows.size(), std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) R[i][j] = static_cast<long>(rows[i][j]);
  SmithForm snf = smith_normal_form(R);

  // Nontrivial components, largest first.
  std::vector<std::size_t> comps;
  for (std::size_t i = 0; i < n; ++i)
    if (snf.diagonal[i] != 1) comps.push_back(i);
  std::reverse(comps.begin(), comps.end());
  for (auto i : comps) structure_.cyclic_orders.push_back(snf.diagonal[i].get_si());

  for (std::int64_t c = 0; c < hh; ++c) {
    const auto& x = vec[static_cast<std::size_t>(c)];
    std::vector<std::int64_t> y;
    for (auto i : comps) {
      Int acc = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j < x.size()) acc += Int(static_cast<long>(x[j])) * snf.V[j][i];
      y.push_back(mod(acc, snf.diagonal[i]).get_si());
    }
    dlog_[static_cast<std::size_t>(c)] = std::move(y);
  }

  for (auto i : comps) {
    int cls = 0;
    for (std::size_t j = 0; j < n; ++j) {
      Int e = mod(snf.V_inv[i][j], Int(static_cast<long>(hh)));
      cls = mul(cls, pow(gens[j], e.get_si()));
    }
    structure_.generators.push_back(prime_in_class(cls));
  }
}

const ClassGroupStructure& ClassGroup::structure() const {
  std::call_once(structure_once_, [this] { build_structure(); });
  return structure_;
}

const std::vector<std::int64_t>& ClassGroup::dlog(int c) const {
  structure();
  return dlog_.at(static_cast<std::size_t>(c));
}

Ideal ClassGroup::prime_in_class(int c, std::int64_t exclude) const {
  const Int d(static_cast<long>(disc_));
  for (std::int64_t q = 2; q < 50'000'000; ++q) {
    if (q == exclude || !is_prime_u64(static_cast<std::uint64_t>(q))) continue;
    const Int qq(static_cast<long>(q));
    auto root = sqrt_disc_mod_4q(d, qq);
    if (!root) continue;
    for (bool other : {false, true}) {
      Ideal I = make_ideal(qq, other ? Int(-*root) : *root, disc_);
      if (class_of(I) == c) return I;
    }
  }
  throw Error(ErrorKind::GeneratorSearchFailed, "no prime ideal found in class");
}

const ClassGroup& QuadraticField::class_group() const {
  auto& cache = FieldCacheAccess::get(*this);
  std::call_once(cache.class_group_once,
                 [&] { cache.class_group = std::make_unique<ClassGroup>(*this); });
  return *cache.class_group;
}

ClassGroupStructure class_group_structure(const QuadraticField& k) {
  return k.class_group().structure();
}

std::int64_t ideal_class_order(const QuadraticField& k, const Ideal& l) {
  const ClassGroup& cg = k.class_group();
  return cg.order(cg.class_of(l));
}

std::optional<QuadInt> is_principal_with_generator(const QuadraticField& k, const Ideal& I) {
  auto g = k.class_group().generator(track(I));
  if (!g) return std::nullopt;
  return canonical_associate(k, *g);
}

std::int64_t class_number(std::int64_t disc) {
  QuadraticField k(radicand_of(disc));
  return ClassGroup(k).h();
}

}  // namespace rqf

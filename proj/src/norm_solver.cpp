#include "rqf/norm_solver.hpp"

#include <functional>

#include "rqf/errors.hpp"

namespace rqf {

namespace {

struct Option {
  TrackedIdeal ideal;  // exact ideal, stored as factor * reduced ideal
  std::vector<std::int64_t> cls;
};

// Ideals of norm q^e for one prime power, grouped as alternatives.
std::vector<Option> options_for(const QuadraticField& k, const ClassGroup& cg, const Int& q, int e,
                                bool primitive_only) {
  const std::int64_t d = k.disc();
  const Int dd(static_cast<long>(d));
  std::vector<Option> out;
  auto make = [&](const TrackedIdeal& t) {
    Option o;
    o.ideal = t;
    o.cls = cg.dlog(cg.locate(t.ideal).first);
    out.push_back(std::move(o));
  };
  const int kr = kronecker(dd, q);
  if (kr == 0) {
    if (primitive_only && e > 1) return out;
    make(tracked_pow(track(prime_ideal(k, q)), static_cast<unsigned long>(e)));
  } else if (kr == -1) {
    if (e % 2 != 0 || primitive_only) return out;
    TrackedIdeal t = track(unit_ideal(d));
    t.factor = QuadFrac{ipow(q, static_cast<unsigned long>(e / 2)), 0, 1, d};
    make(t);
  } else {
    const TrackedIdeal P = track(prime_ideal(k, q)), Q = track(prime_ideal(k, q, true));
    for (int i = e; i >= 0; --i) {
      if (primitive_only && i != 0 && i != e) continue;
      TrackedIdeal t = tracked_multiply(tracked_pow(P, static_cast<unsigned long>(i)),
                                        tracked_pow(Q, static_cast<unsigned long>(e - i)));
      make(t);
    }
  }
  return out;
}

// Walks every combination of options whose classes cancel; `leaf` returns
// false to stop the walk.
void walk(const QuadraticField& k, const Int& N, bool primitive_only,
          const std::function<bool(const QuadInt&)>& leaf) {
  if (N == 0) throw Error(ErrorKind::InvalidArgument, "norm must be nonzero");
  const ClassGroup& cg = k.class_group();
  const auto& orders = cg.structure().cyclic_orders;
  const UnitRecord& unit = k.unit();

  std::vector<std::vector<Option>> opts;
  if (abs(N) != 1) {
    for (const auto& [q, e] : factor_cached(abs(N))) {
      opts.push_back(options_for(k, cg, q, e, primitive_only));
      if (opts.back().empty()) return;
    }
  }

  std::vector<std::size_t> pick(opts.size(), 0);
  std::vector<std::int64_t> acc(orders.size(), 0);
  bool stop = false;

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == opts.size()) {
      for (auto v : acc)
        if (v != 0) return;
      TrackedIdeal prod = track(unit_ideal(k.disc()));
      for (std::size_t j = 0; j < opts.size(); ++j) {
        const TrackedIdeal& t = opts[j][pick[j]].ideal;
        prod = j == 0 ? t : tracked_multiply(prod, t);
      }
      auto g = cg.generator(prod);
      if (!g) throw Error(ErrorKind::InvalidArgument, "class vector and cycle lookup disagree");
      QuadInt x = *g;
      if (norm(x) != N) {
        if (unit.norm_eps != -1) return;
        x = x * unit.eps;
      }
      if (!leaf(canonical_norm_representative(k, x))) stop = true;
      return;
    }
    for (std::size_t c = 0; c < opts[i].size() && !stop; ++c) {
      pick[i] = c;
      const auto& v = opts[i][c].cls;
      for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = (acc[j] + v[j]) % orders[j];
      rec(i + 1);
      for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = ((acc[j] - v[j]) % orders[j] + orders[j]) % orders[j];
    }
  };
  rec(0);
}

}  // namespace

bool is_primitive(const QuadInt& x) { return content(x) == 1; }

NormSolutionSet norm_solutions(const QuadraticField& k, const Int& N, bool primitive_only) {
  NormSolutionSet out;
  out.N = N;
  out.primitive_only = primitive_only;
  walk(k, N, primitive_only, [&](const QuadInt& x) {
    if (norm(x) != N) throw Error(ErrorKind::InvalidArgument, "solver produced a wrong norm");
    out.solutions.push_back(x);
    return true;
  });
  return out;
}

bool has_norm_solution(const QuadraticField& k, const Int& N) {
  bool found = false;
  walk(k, N, false, [&](const QuadInt&) {
    found = true;
    return false;
  });
  return found;
}

}  // namespace rqf

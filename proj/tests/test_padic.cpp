#include "test_main.hpp"

#include <random>

#include "sz/padic.hpp"

using namespace sz;

namespace {

QVec v(std::initializer_list<long> xs) {
  QVec r;
  for (long x : xs) r.push_back(Q(x));
  return r;
}

Q pk(long p, long k) { return k >= 0 ? Q(ipow(p, k)) : Q(Z(1), ipow(p, -k)); }

// x in c + p^k Z_p, straight from valuations.
bool in_ball(long p, const QVec& c, long k, const QVec& x) {
  for (size_t i = 0; i < x.size(); ++i) {
    Q d = x[i] - c[i];
    if (sgn(d) && valuation(d, p) < k) return false;
  }
  return true;
}

// psi(x) = zeta_{p^v}^r with r / p^v = {x}_p, computed from x = a / (p^v w).
Cyclotomic psi(long p, const Q& x) {
  if (sgn(x) == 0) return 1;
  long v = -valuation(x, p);
  if (v <= 0) return 1;
  Z pv = ipow(p, v);
  Z w = x.get_den() / pv;
  Z winv, r;
  mpz_invert(winv.get_mpz_t(), w.get_mpz_t(), pv.get_mpz_t());
  r = x.get_num() * winv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), pv.get_mpz_t());
  return Cyclotomic::zeta(p, static_cast<int>(v), r.get_si());
}

// Value of a raw term list at x.
Cyclotomic eval_terms(long p, const std::vector<std::pair<Ball, Cyclotomic>>& t, const QVec& x) {
  Cyclotomic acc;
  for (auto& [b, c] : t)
    if (in_ball(p, b.center, b.level, x)) acc += c;
  return acc;
}

// F f(y) as the finite character sum over the balls of f.
Cyclotomic fourier_oracle(const SchwartzBruhat& f, const QVec& y) {
  long p = f.p();
  int n = f.dim();
  if (!in_ball(p, zero_vec(n), -f.level(), y)) return 0;
  Cyclotomic acc;
  for (auto& [c, val] : f.terms()) acc += val * psi(p, dot(c, y));
  return acc * Cyclotomic(pk(p, -n * f.level()));
}

QVec random_point(std::mt19937_64& rng, long p, int n, long depth = 3) {
  std::uniform_int_distribution<long> num(-200, 200);
  std::uniform_int_distribution<long> den(0, depth);
  QVec x(n);
  for (auto& c : x) {
    c = Q(num(rng)) / Q(ipow(p, den(rng)));
    c.canonicalize();
  }
  return x;
}

}  // namespace

TEST_CASE("canonical representatives") {
  CHECK(reduce_mod_pk(Q(7), 5, 1) == 2);
  CHECK(reduce_mod_pk(Q(-1), 3, 2) == 8);
  CHECK(reduce_mod_pk(Q(7, 5), 5, 0) == Q(2, 5));
  CHECK(reduce_mod_pk(Q(7, 25), 5, -1) == Q(2, 25));
  CHECK(reduce_mod_pk(Q(3, 25), 5, -1) == Q(3, 25));
  CHECK(reduce_mod_pk(Q(1, 3), 2, 2) == 3);  // 3 * 3 = 9 = 1 mod 4
  CHECK(reduce_mod_pk(Q(25), 5, 2) == 0);
  std::mt19937_64 rng(3);
  for (long p : {2L, 3L, 5L})
    for (int i = 0; i < 100; ++i) {
      QVec x = random_point(rng, p, 1);
      long k = static_cast<long>(rng() % 5) - 2;
      Q r = reduce_mod_pk(x[0], p, k);
      CHECK(r >= 0);
      CHECK(r < pk(p, k));
      CHECK(in_ball(p, {r}, k, x));
    }
}

TEST_CASE("canonicalize") {
  for (long p : {2L, 3L, 5L}) {
    auto one = SchwartzBruhat::basic(p, 1);
    auto two = one + one;
    CHECK(two.terms().size() == 1);
    CHECK(two.level() == 0);
    CHECK(two.terms().at(v({0})) == Cyclotomic(2));

    auto diff = one - SchwartzBruhat::ball(p, v({0}), 1);
    CHECK(diff.level() == 1);
    CHECK(diff.terms().size() == static_cast<size_t>(p - 1));
    for (long j = 1; j < p; ++j) CHECK(diff.terms().at(v({j})) == Cyclotomic(1));

    // idempotent and coarsened
    std::vector<std::pair<Ball, Cyclotomic>> split;
    for (long j = 0; j < p; ++j) split.push_back({Ball{v({j}), 1}, Cyclotomic(3)});
    CHECK(canonicalize(p, 1, 0, split) == Cyclotomic(3) * one);
  }

  std::mt19937_64 rng(5);
  for (long p : {2L, 3L, 5L})
    for (int n = 1; n <= 2; ++n)
      for (int rep = 0; rep < 5; ++rep) {
        std::vector<std::pair<Ball, Cyclotomic>> t;
        for (int i = 0; i < 4; ++i) {
          long k = static_cast<long>(rng() % 4) - 1;
          QVec c = random_point(rng, p, n, 1);
          t.push_back({Ball{c, k}, Cyclotomic(Q(static_cast<long>(rng() % 7) - 3))});
        }
        auto f = canonicalize(p, n, 0, t);
        std::vector<std::pair<Ball, Cyclotomic>> again;
        for (auto& [c, val] : f.terms()) again.push_back({Ball{c, f.level()}, val});
        CHECK(canonicalize(p, n, 0, again) == f);
        for (auto& [c, val] : f.terms()) CHECK_FALSE(val.is_zero());
        for (int s = 0; s < 100; ++s) {
          QVec x = random_point(rng, p, n);
          CHECK(f(x) == eval_terms(p, t, x));
        }
      }
}

TEST_CASE("Fourier transform: worked examples") {
  for (long p : {2L, 3L, 5L}) {
    for (Q w : {Q(0), Q(1, 2), Q(1)}) {
      auto b = SchwartzBruhat::basic(p, 1, w);
      auto fb = fourier(b);
      CHECK(fb.terms() == b.terms());
      CHECK(fb.level() == 0);
      CHECK(fb.weight() == (w == Q(1, 2) ? w : Q(1 - w)));
    }
    auto f = fourier(SchwartzBruhat::ball(p, v({0}), 1));
    CHECK(f == SchwartzBruhat::ball(p, v({0}), -1, Cyclotomic(Q(1, p)), 1));
  }
  auto g = fourier(SchwartzBruhat::ball(3, v({1}), 1));
  CHECK(g.level() == 0);
  REQUIRE(g.terms().size() == 3);
  for (long j = 0; j < 3; ++j)
    CHECK(g.terms().at({Q(j, 3)}) == Cyclotomic(Q(1, 3)) * Cyclotomic::zeta(3, 1, j));
}

TEST_CASE("Fourier transform against the character-sum oracle") {
  std::mt19937_64 rng(7);
  for (long p : {2L, 3L, 5L})
    for (int n = 1; n <= 2; ++n)
      for (int rep = 0; rep < 6; ++rep) {
        auto f = random_schwartz_bruhat(p, n, 0, rng);
        auto ff = fourier(f);
        for (auto& [y, val] : ff.terms()) CHECK(val == fourier_oracle(f, y));
        for (int s = 0; s < 30; ++s) {
          QVec y = random_point(rng, p, n);
          CHECK(ff(y) == fourier_oracle(f, y));
        }
        CHECK(ff(zero_vec(n)) == integrate(f));
      }
}

TEST_CASE("Fourier inversion, Plancherel, basic vector") {
  std::mt19937_64 rng(11);
  for (long p : {2L, 3L, 5L})
    for (int n = 1; n <= 2; ++n)
      for (int rep = 0; rep < 8; ++rep) {
        auto f = random_schwartz_bruhat(p, n, Q(1, 2), rng);
        auto ff = fourier(f);
        CHECK(fourier(ff) == reflect(f));
        CHECK(l2_inner(f, f) == l2_inner(ff, ff));
        auto g = random_schwartz_bruhat(p, n, Q(1, 2), rng);
        CHECK(l2_inner(f, g) == l2_inner(ff, fourier(g)));
        CHECK(l2_inner(f, g) == l2_inner(g, f).conj());
      }
  CHECK(fourier(SchwartzBruhat::basic(5, 2, Q(1, 2))) == SchwartzBruhat::basic(5, 2, Q(1, 2)));
}

TEST_CASE("integration and inner products") {
  CHECK(integrate(SchwartzBruhat::basic(3, 1)) == Cyclotomic(1));
  CHECK(integrate(SchwartzBruhat::ball(3, v({0, 0}), 1)) == Cyclotomic(Q(1, 9)));
  CHECK(integrate(SchwartzBruhat::ball(2, v({0}), -2, 1, 1)) == Cyclotomic(4));
  CHECK_THROWS_AS(integrate(SchwartzBruhat::basic(3, 1, Q(1, 2))), std::domain_error);
  auto h = SchwartzBruhat::basic(5, 1, Q(1, 2));
  CHECK(l2_inner(h, h) == Cyclotomic(1));
  auto a = SchwartzBruhat::ball(5, v({1}), 1, 1, Q(1, 2));
  auto b = SchwartzBruhat::ball(5, v({2}), 1, 1, Q(1, 2));
  CHECK(l2_inner(a, b).is_zero());
  CHECK_THROWS_AS(l2_inner(SchwartzBruhat::basic(5, 1), h), std::invalid_argument);
}

TEST_CASE("Smith form over Z_(p)") {
  auto s = smith_zp({v({1, 0}), v({0, 3})}, 3);
  CHECK(s.exponents == std::vector<long>{0, 1});
  s = smith_zp({v({0, 1}), v({5, 0})}, 5);
  CHECK(s.exponents == std::vector<long>{0, 1});
  CHECK(mat_mul(mat_mul(s.u, s.d()), s.v) == QMat{v({0, 1}), v({5, 0})});
  CHECK_THROWS(smith_zp({v({1, 2}), v({2, 4})}, 3));

  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> e(-30, 30);
  for (long p : {2L, 3L, 5L})
    for (int rep = 0; rep < 40; ++rep) {
      int n = 2 + rep % 2;
      QMat g(n, QVec(n));
      for (auto& r : g)
        for (auto& x : r) x = Q(e(rng), 1 + rng() % 4);
      for (auto& r : g)
        for (auto& x : r) x.canonicalize();
      if (sgn(det(g)) == 0) continue;
      auto sm = smith_zp(g, p);
      CHECK(mat_mul(mat_mul(sm.u, sm.d()), sm.v) == g);
      long total = 0;
      for (size_t i = 0; i < sm.exponents.size(); ++i) {
        total += sm.exponents[i];
        if (i) CHECK(sm.exponents[i - 1] <= sm.exponents[i]);
      }
      CHECK(total == valuation(det(g), p));
      for (auto* m : {&sm.u, &sm.v}) {
        for (auto& r : *m)
          for (auto& x : r)
            if (sgn(x)) CHECK(valuation(x, p) >= 0);
        CHECK(valuation(det(*m), p) == 0);
      }
    }
}

TEST_CASE("affine action") {
  for (long p : {2L, 3L, 5L}) {
    auto b = SchwartzBruhat::basic(p, 1);
    CHECK(act_affine(b, identity(1)) == b);
    CHECK(act_affine(b, {v({p})}) == SchwartzBruhat::ball(p, v({0}), -1));
  }

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> e(-6, 6);
  for (long p : {2L, 3L, 5L})
    for (int n = 1; n <= 2; ++n)
      for (int rep = 0; rep < 6; ++rep) {
        Q w = std::vector<Q>{0, Q(1, 2), 1}[rep % 3];
        auto f = random_schwartz_bruhat(p, n, w, rng);
        QMat g(n, QVec(n));
        do {
          for (auto& r : g)
            for (auto& x : r) x = e(rng);
        } while (sgn(det(g)) == 0);
        QVec shift = random_point(rng, p, n, 1);
        auto h = act_affine(f, g, shift);
        long vd = valuation(det(g), p);
        Cyclotomic twist = w == 0 ? Cyclotomic(1)
                           : w == 1 ? Cyclotomic(pk(p, -vd))
                                    : Cyclotomic::sqrt_p(p).pow(-vd);
        for (int s = 0; s < 40; ++s) {
          QVec x = random_point(rng, p, n);
          CHECK(h(x) == f(add(vec_mat(x, g), shift)) * twist);
        }
      }

  // Norm preservation at weight 1/2 for monomial g, and equivariance of the
  // Fourier transform with the contragredient action. Spreads stay small so
  // the transforms stay cheap.
  RandomSBOptions small;
  small.max_spread = 1;
  for (long p : {2L, 3L, 5L})
    for (int rep = 0; rep < 6; ++rep) {
      auto f = random_schwartz_bruhat(p, 2, Q(1, 2), rng, small);
      long a = static_cast<long>(rng() % 2) - 1, c = a + static_cast<long>(rng() % 2);
      QMat g = rep % 2 ? QMat{QVec{pk(p, a), Q(0)}, QVec{Q(0), pk(p, c)}}
                       : QMat{QVec{Q(0), pk(p, a)}, QVec{pk(p, c) * 2, Q(0)}};
      auto h = act_affine(f, g);
      CHECK(l2_inner(h, h) == l2_inner(f, f));
      QMat git = transpose(inverse(g), 2);
      CHECK(fourier(h) == act_affine(fourier(f), git));
    }
  CHECK_THROWS_AS(act_affine(SchwartzBruhat::basic(3, 2), {v({1, 1}), v({1, 1})}), std::domain_error);
}

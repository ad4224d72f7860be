// Acceptance suite. One PASS/FAIL line per criterion; exits 1 if any line failed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "divsum/divsum.hpp"
#include "oracle.hpp"

using namespace divsum;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

int failures = 0;

void report(const std::string& id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.passed) ++failures;
  std::printf("[%s] %s %s: %s (%.2fs)\n", out.passed ? "PASS" : "FAIL", id.c_str(), title.c_str(),
              out.detail.c_str(), secs);
  std::fflush(stdout);
}

// First mismatch wins the detail string.
struct Tracker {
  std::size_t checks = 0;
  std::size_t bad = 0;
  std::string first;

  void check(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    if (bad++ == 0) first = what();
  }
  Outcome outcome(double elapsed = 0, double limit = 0) const {
    std::ostringstream s;
    s << checks << " checks, " << bad << " mismatches";
    if (bad) s << "; first: " << first;
    bool ok = bad == 0;
    if (limit > 0) {
      s << "; runtime " << elapsed << "s vs limit " << limit << "s";
      ok = ok && elapsed < limit;
    }
    return {ok, s.str()};
  }
};

double since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string at(std::uint64_t n, const SParam& s) {
  return "n=" + std::to_string(n) + " s=" + s.value_string();
}

constexpr GdForm kProductForms[] = {GdForm::kProduct, GdForm::kAlternate, GdForm::kZetaLocal};

}  // namespace

int main() {
  std::mt19937_64 rng(20240607);

  report("C1", "dineva exact n<=1e6", [] {
    const auto t = std::chrono::steady_clock::now();
    const SpfTable table(1'000'000);
    Tracker tr;
    for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
      const auto f = table.factorize(n);
      const auto lhs = dineva(f);
      const ArithValue rhs = ArithValue::ratio(n, totient(f));
      tr.check(lhs.is_exact() && lhs == rhs, [&] { return "n=" + std::to_string(n); });
    }
    return tr.outcome(since(t), 60);
  });

  report("C2", "generalized dineva forms n<=1e5 s in {-1..3}", [] {
    const auto t = std::chrono::steady_clock::now();
    const SpfTable table(100'000);
    Tracker tr;
    for (long si = -1; si <= 3; ++si) {
      const SParam s = SParam::integer(si);
      for (std::uint64_t n = 1; n <= 100'000; ++n) {
        const auto f = table.factorize(n);
        const auto sum = generalized_dineva(f, s, GdForm::kDivisorSum);
        for (GdForm form : kProductForms) {
          const auto prod = generalized_dineva(f, s, form);
          tr.check(sum.is_exact() && sum == prod,
                   [&] { return at(n, s) + " form=" + std::string(to_string(form)); });
        }
      }
    }
    return tr.outcome(since(t), 120);
  });

  report("C3", "real s spot suite, 50 s in (-2,4), n<=1e4, rel_tol 1e-12", [&rng] {
    std::uniform_real_distribution<double> dist(-2.0, 4.0);
    const SpfTable table(10'000);
    Tracker tr;
    for (int i = 0; i < 50; ++i) {
      const SParam s = SParam::real(dist(rng));
      for (std::uint64_t n = 1; n <= 10'000; ++n) {
        const auto f = table.factorize(n);
        const auto sum = generalized_dineva(f, s, GdForm::kDivisorSum);
        for (GdForm form : kProductForms) {
          tr.check(approx_equal(sum, generalized_dineva(f, s, form), 1e-12),
                   [&] { return at(n, s) + " form=" + std::string(to_string(form)); });
        }
      }
    }
    return tr.outcome();
  });

  report("C4", "identity_pair exact for 100 seeded weights, n<=1e3", [&rng] {
    const SpfTable table(1'000);
    Tracker tr;
    for (int i = 0; i < 100; ++i) {
      const auto g = weights::seeded_rational(rng());
      const SParam s = SParam::integer(i % 5 - 1);
      for (std::uint64_t n = 1; n <= 1'000; ++n) {
        const auto [sum, product] = identity_pair(table.factorize(n), g, s);
        tr.check(sum.is_exact() && sum == product, [&] { return g.name + " " + at(n, s); });
      }
    }
    return tr.outcome();
  });

  report("C5", "local-factor products vs brute force for mu, mu^2, phi, sigma, n<=1e4", [] {
    const oracle::Tables tables(10'000);
    const SpfTable table(10'000);
    struct Case {
      const char* name;
      LocalFunction local;
      std::function<mpq_class(std::uint64_t)> brute;
    };
    const std::vector<Case> cases = {
        {"mu", local_functions::mobius(), [&](std::uint64_t d) { return mpq_class(tables.mu[d]); }},
        {"mu^2", local_functions::mobius_squared(),
         [&](std::uint64_t d) { return mpq_class(tables.mu[d] * tables.mu[d]); }},
        {"phi", local_functions::totient(),
         [&](std::uint64_t d) { return mpq_class(static_cast<unsigned long>(tables.phi[d])); }},
        {"sigma", local_functions::sigma(),
         [&](std::uint64_t d) { return mpq_class(static_cast<unsigned long>(tables.sigma[d])); }},
    };
    Tracker tr;
    for (const auto& c : cases) {
      for (long si = 0; si <= 2; ++si) {
        const SParam s = SParam::integer(si);
        for (std::uint64_t n = 1; n <= 10'000; ++n) {
          const auto product = multiplicative_dirichlet_sum(table.factorize(n), c.local, s);
          const auto brute = oracle::dirichlet_sum(n, si, c.brute);
          tr.check(product.is_exact() && product.exact() == brute,
                   [&] { return std::string(c.name) + " " + at(n, s); });
        }
      }
    }
    return tr.outcome();
  });

  report("C6", "mobius sum = 1/zeta_n(s), n<=1e4, s in {1,2,3}", [] {
    const SpfTable table(10'000);
    Tracker tr;
    for (long si = 1; si <= 3; ++si) {
      const SParam s = SParam::integer(si);
      for (std::uint64_t n = 1; n <= 10'000; ++n) {
        const auto f = table.factorize(n);
        const auto lhs = mobius_divisor_sum(f, s);
        const auto rhs = partial_zeta(f, s).inverse();
        const auto brute = oracle::dirichlet_sum(n, si, [](std::uint64_t d) { return oracle::mu(d); });
        tr.check(lhs.is_exact() && lhs == rhs && lhs.exact() == brute,
                 [&] { return at(n, s); });
      }
    }
    return tr.outcome();
  });

  report("C7", "sigma local factors vs zeta_n(s) zeta_n(s-1), n<=1e3, s in {2,3}", [] {
    const SpfTable table(1'000);
    Tracker tr;
    constexpr double kTol = 1e-9;
    for (long si = 2; si <= 3; ++si) {
      const SParam s = SParam::integer(si);
      for (std::uint64_t n = 1; n <= 1'000; ++n) {
        const auto f = table.factorize(n);
        const auto [closed, zeta] = sigma_closed_identity(f, s);
        tr.check(closed.is_exact() && closed == zeta, [&] { return "closed " + at(n, s); });

        const int depth = choose_truncation_depth(f, s.as_double(), kTol);
        ArithValue truncated = ArithValue::integer(1);
        for (const auto& pp : f.factors()) {
          truncated *= sigma_local_factor(pp.prime, s, SigmaTruncated{depth});
        }
        const double gap = abs_discrepancy(truncated, zeta);
        tr.check(gap <= kTol, [&] {
          return "truncated " + at(n, s) + " K=" + std::to_string(depth) +
                 " gap=" + format_double(gap);
        });
      }
    }
    return tr.outcome();
  });

  report("C8", "prod_{p<=1e4}(1+p^-2) vs zeta(2)/zeta(4)", [] {
    const auto t = std::chrono::steady_clock::now();
    const auto product = truncated_global_product(10'000, 2.0);
    const double z2 = zeta_reference(2.0, 1e-12).to_double();
    const double z4 = zeta_reference(4.0, 1e-12).to_double();
    const double reference = z2 / z4;
    const double closed = 15.0 / (std::numbers::pi * std::numbers::pi);
    const double product_gap = std::fabs(product.value - reference);
    const double series_gap = std::fabs(reference - closed);
    const double elapsed = since(t);
    std::ostringstream s;
    s << "product=" << format_double(product.value) << " reference=" << format_double(reference)
      << " |diff|=" << product_gap << " (limit 1e-3), |series - 15/pi^2|=" << series_gap
      << " (limit 1e-9); runtime " << elapsed << "s vs limit 5s";
    return Outcome{product_gap <= 1e-3 && series_gap <= 1e-9 && elapsed < 5.0, s.str()};
  });

  // The four clauses of the weight criterion are reported separately so the
  // decay clause can fail on its own.
  {
    const SpfTable table(10'000);
    const SParam svals[] = {SParam::integer(0), SParam::integer(1), SParam::integer(2)};

    report("C9a", "lambda ratio = lambda product, n<=1e4, s in {0,1,2}", [&] {
      Tracker tr;
      for (const auto& s : svals) {
        for (std::uint64_t n = 1; n <= 10'000; ++n) {
          const auto f = table.factorize(n);
          for (std::uint64_t d : squarefree_divisors(f)) {
            const auto ratio = lambda_ratio(d, f, s);
            const auto product = lambda_product(table.factorize(d), s);
            tr.check(ratio.is_exact() && ratio == product,
                     [&] { return at(n, s) + " d=" + std::to_string(d); });
          }
        }
      }
      return tr.outcome();
    });

    std::vector<SieveWeights> tables;
    report("C9b", "lambda_1 = 1 in every table", [&] {
      Tracker tr;
      for (const auto& s : svals) {
        for (std::uint64_t n = 1; n <= 10'000; ++n) {
          tables.push_back(weight_table(table.factorize(n), s));
          tr.check(tables.back().lambda.at(1) == ArithValue::integer(1),
                   [&] { return at(n, s); });
        }
      }
      return tr.outcome();
    });

    report("C9c", "|lambda_d| <= 1", [&] {
      Tracker tr;
      for (const auto& w : tables) {
        for (const auto& [d, lambda] : w.lambda) {
          tr.check(!(ArithValue::integer(1) < lambda.abs()),
                   [&] { return at(w.n, w.s) + " d=" + std::to_string(d) + " lambda=" + lambda.to_string(); });
        }
      }
      return tr.outcome();
    });

    report("C9d", "|lambda_d| non-increasing in s for d>1, s=0,1,2", [&] {
      Tracker tr;
      for (std::uint64_t n = 1; n <= 10'000; ++n) {
        const auto rows = weight_decay_profile(table.factorize(n), {svals[0], svals[1], svals[2]});
        for (const auto& row : rows) {
          if (row.d == 1) continue;
          for (std::size_t i = 0; i + 1 < row.lambda.size(); ++i) {
            const auto& before = row.lambda[i];
            const auto& after = row.lambda[i + 1];
            tr.check(!(before.abs() < after.abs()), [&] {
              return "n=" + std::to_string(n) + " d=" + std::to_string(row.d) + " |lambda| " +
                     before.abs().to_string() + " (s=" + std::to_string(i) + ") -> " +
                     after.abs().to_string() + " (s=" + std::to_string(i + 1) + ")";
            });
          }
        }
      }
      return tr.outcome();
    });
  }

  report("C10", "J = generalized dineva, n<=1e4, s in {0,1,2}", [] {
    const SpfTable table(10'000);
    Tracker tr;
    for (long si = 0; si <= 2; ++si) {
      const SParam s = SParam::integer(si);
      for (std::uint64_t n = 1; n <= 10'000; ++n) {
        const auto f = table.factorize(n);
        const auto j = J(f, s);
        tr.check(j.is_exact() && j == generalized_dineva(f, s, GdForm::kDivisorSum) &&
                     j == generalized_dineva(f, s, GdForm::kProduct),
                 [&] { return at(n, s); });
      }
    }
    return tr.outcome();
  });

  report("C11", "Q vs naive double loop, X<=1e3", [] {
    Tracker tr;
    const auto fixture = quadratic_form_Q(4, 2, weight_table(factorize(6), SParam::integer(0)));
    tr.check(fixture == ArithValue(mpq_class(5, 2)),
             [&] { return "fixture Q(4,2) for n=6 gave " + fixture.to_string(); });

    auto naive = [](std::uint64_t X, std::uint64_t R, const SieveWeights& w) {
      mpq_class total = 0;
      for (std::uint64_t m = 1; m <= X; ++m) {
        mpq_class inner = 0;
        for (std::uint64_t d = 1; d <= std::min(m, R); ++d) {
          if (m % d != 0) continue;
          auto it = w.lambda.find(d);
          if (it != w.lambda.end()) inner += it->second.exact();
        }
        total += inner * inner;
      }
      total.canonicalize();
      return total;
    };
    const std::uint64_t ns[] = {1, 2, 6, 12, 30, 60, 210, 1001, 2310, 9699690};
    const std::uint64_t Xs[] = {1, 2, 3, 4, 7, 10, 31, 100, 257, 500, 999, 1000};
    const std::uint64_t Rs[] = {1, 2, 3, 6, 10, 30, 100, 1000};
    for (std::uint64_t n : ns) {
      for (long si = 0; si <= 2; ++si) {
        const SParam s = SParam::integer(si);
        const auto w = weight_table(factorize(n), s);
        for (std::uint64_t X : Xs) {
          for (std::uint64_t R : Rs) {
            const auto q = quadratic_form_Q(X, R, w);
            tr.check(q.is_exact() && q.exact() == naive(X, R, w), [&] {
              return at(n, s) + " X=" + std::to_string(X) + " R=" + std::to_string(R);
            });
          }
        }
      }
    }
    return tr.outcome();
  });

  report("C12", "multiplicativity over 1e3 coprime pairs, radical invariance n<=1e4", [&rng] {
    Tracker tr;
    std::uniform_int_distribution<std::uint64_t> dist(1, 100'000);
    const SParam s2 = SParam::integer(2);
    const SParam s3 = SParam::integer(3);
    for (int pairs = 0; pairs < 1'000;) {
      const std::uint64_t a = dist(rng);
      const std::uint64_t b = dist(rng);
      if (std::gcd(a, b) != 1) continue;
      ++pairs;
      const auto fa = factorize(a);
      const auto fb = factorize(b);
      const auto fab = factorize(a * b);
      const std::string where = "a=" + std::to_string(a) + " b=" + std::to_string(b);

      tr.check(totient(fab) == totient(fa) * totient(fb), [&] { return "phi " + where; });
      tr.check(sigma(fab) == sigma(fa) * sigma(fb), [&] { return "sigma " + where; });
      tr.check(mobius(fab) == mobius(fa) * mobius(fb), [&] { return "mu " + where; });
      for (const auto& entry : identity_registry()) {
        const SParam& s = entry.name == "sigma_partial" ? s3 : s2;
        const auto lab = verify(entry.name, fab, s).lhs;
        tr.check(lab == verify(entry.name, fa, s).lhs * verify(entry.name, fb, s).lhs,
                 [&] { return entry.name + " " + where; });
      }
      for (long si = 1; si <= 3; ++si) {
        const SParam s = SParam::integer(si);
        tr.check(partial_zeta(fab, s) == partial_zeta(fa, s) * partial_zeta(fb, s),
                 [&] { return "zeta_n s=" + std::to_string(si) + " " + where; });
      }
    }

    const SpfTable table(10'000);
    for (const auto& entry : identity_registry()) {
      if (!entry.squarefree_supported) continue;
      const SParam& s = entry.name == "sigma_partial" ? s3 : s2;
      for (std::uint64_t n = 1; n <= 10'000; ++n) {
        const auto f = table.factorize(n);
        const auto r = radical_factorization(f);
        tr.check(verify(entry.name, f, s).lhs == verify(entry.name, r, s).lhs,
                 [&] { return "radical " + entry.name + " n=" + std::to_string(n); });
      }
    }
    return tr.outcome();
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

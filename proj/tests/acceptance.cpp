// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qsh/cli.hpp"
#include "support.hpp"

using namespace qsh;
using namespace qsh::testing;

namespace {

using Clock = std::chrono::steady_clock;

// Collects failure notes for one criterion.
struct Outcome {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void expect(const CheckResult& r) {
    if (!r.passed()) failures.push_back(r.check_id + " (" + r.inputs + "): " + r.witness);
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Times one worked example; each must finish within a second.
void example(Outcome& o, const std::string& name, const std::function<bool()>& f) {
  auto t0 = Clock::now();
  const bool ok = f();
  const double s = seconds_since(t0);
  o.expect(ok, name + ": wrong value");
  o.expect(s < 1.0, name + ": took " + std::to_string(s) + " s");
}

NCPoly abc(std::string_view s) { return W(alphabets::abc(), word_of(*alphabets::abc(), s)); }

Outcome worked_examples() {
  Outcome o;
  example(o, "z2 * z3", [] { return named_product("stuffle", P("z2"), P("z3")) == P("z2 z3 + z3 z2 + z5"); });
  example(o, "z2 sh z3", [] { return named_product("shuffle", P("z2"), P("z3")) == P("3 z3 z2 + 6 z4 z1 + z2 z3"); });
  example(o, "ex3 left", [] {
    const auto& h = builtin_handle("ex3");
    return gqsh(h, gqsh(h, P("a"), P("b")), P("b")) == P("bba");
  });
  example(o, "ex3 right", [] {
    const auto& h = builtin_handle("ex3");
    return gqsh(h, P("a"), gqsh(h, P("a"), P("b"))) == P("2 baa - babb");
  });
  example(o, "ex4", [] {
    const auto& h = builtin_handle("ex4");
    return gqsh(h, abc("a"), gqsh(h, abc("b"), abc("c"))) == abc("cab") + abc("cba");
  });
  example(o, "ds(z2,z3)", [] { return ds(P("z2"), P("z3")) == P("2 z3 z2 + 6 z4 z1 - z5"); });
  example(o, "ds(z2,z2)", [] { return ds(P("z2"), P("z2")) == P("4 z3 z1 - z4"); });
  example(o, "e2 sh_q e3", [] {
    return named_product("qshuffle", P("e2"), P("e3")) ==
           P("3 e3 e2 + 6 e4 e1 + e2 e3 + h (3 e4 e0 + 7 e3 e1 + 2 e2 e2) + h^2 (2 e3 e0 + e2 e1)");
  });
  return o;
}

Outcome q_homomorphism() {
  Outcome o;
  const auto& ab = alphabets::ab();
  const auto pairs = admissible_ab_pairs(6);
  o.expect(pairs.size() == 17, "expected 17 admissible pairs");
  for (const auto& [u, v] : pairs)
    for (std::string_view prod : {"qstuffle", "qshuffle"}) {
      CheckResult r = verify_product_hom(prod, NCPoly(ab, u), NCPoly(ab, v), 30);
      o.expect(r);
      o.expect(r.status == CheckStatus::exact_pass, r.inputs + ": not exact");
    }
  return o;
}

Outcome operator_suite() {
  Outcome o;
  const int n = 20;
  const auto& e = alphabets::e();
  QZSeries one = QZSeries::one(n, n);
  int count = 0;
  for (const auto& w : words_up_to_weight(e, 8)) {
    if (w.size() > 3) continue;
    int sum = 0;
    for (const auto& l : w) sum += l.code;
    if (sum > 5) continue;
    ++count;
    std::vector<int> idx = codes(w);
    o.expect(act(NCPoly(e, w), one) == li_q(idx, n, n), "Li != w.1 for " + to_string(w, *e));
  }
  o.expect(count == 83, "expected 83 words, got " + std::to_string(count));

  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> c(-3, 3);
  auto random_series = [&] {
    QZSeries g(n, n);
    for (int m = 1; m <= n; ++m)
      for (int k = 0; k <= n; ++k) g.row(m).set(k, c(rng));
    return g;
  };
  DiamondRule rule = builtin_rule("qshuffle");
  for (int i = 0; i < 20; ++i) {
    QZSeries f = random_series(), g = random_series();
    for (Letter x : {Letter{0}, Letter{1}})
      for (Letter y : {Letter{0}, Letter{1}}) {
        QZSeries lhs = act(x, f) * act(y, g);
        QZSeries rhs = act(x, f * act(y, g)) + act(y, act(x, f) * g) + act(rule.apply(x, y), f * g);
        o.expect(lhs == rhs, "Leibniz fails for sample " + std::to_string(i) + " (" + std::to_string(x.code) + "," +
                                 std::to_string(y.code) + ")");
      }
  }
  return o;
}

Outcome associativity() {
  Outcome o;
  for (std::string_view name : {"qshuffle", "ex3", "ex4", "shsh"}) {
    CheckResult r = verify_assoc_comm(builtin_handle(name), 7);
    o.expect(r);
  }
  for (const auto& name : builtin_rule_names()) {
    PropertyReport rep = check_associative(builtin_rule(name));
    o.expect(rep.holds, name + ": check_associative " + (rep.witness ? rep.witness->detail : ""));
  }
  return o;
}

Outcome duality() {
  Outcome o;
  for (const auto& name : builtin_rule_names()) {
    const ProductHandle& h = builtin_handle(name);
    const auto& a = h.alphabet();
    const auto words = words_up_to_weight(a, 6);
    for (const auto& u : words)
      for (const auto& v : words) {
        if (word_weight(u, a) + word_weight(v, a) > 6) continue;
        CheckResult r = verify_dualst(h, NCPoly(a, u), NCPoly(a, v));
        o.expect(r);
      }
  }
  const auto& ab = alphabets::ab();
  for (const auto& [u, v] : admissible_ab_pairs(6)) o.expect(verify_q_duality(NCPoly(ab, u), NCPoly(ab, v)));
  const auto& z = alphabets::z();
  for (int wu = 2; wu <= 5; ++wu)
    for (int wv = 2; wu + wv <= 7; ++wv)
      for (const auto& u : admissible_z_words(wu))
        for (const auto& v : admissible_z_words(wv)) {
          o.expect(verify_dual_stuffle(NCPoly(z, u), NCPoly(z, v)));
          o.expect(verify_ds_identity(NCPoly(z, u), NCPoly(z, v)));
        }
  return o;
}

Outcome numeric_mzv() {
  Outcome o;
  const NumericParams num{100000, 1e-3};
  const auto& z = alphabets::z();
  for (int wu = 2; wu <= 4; ++wu)
    for (int wv = 2; wu + wv <= 6; ++wv)
      for (const auto& u : admissible_z_words(wu))
        for (const auto& v : admissible_z_words(wv)) o.expect(verify_ds(NCPoly(z, u), NCPoly(z, v), num));
  for (int wt = 2; wt <= 5; ++wt)
    for (const auto& w : admissible_z_words(wt)) o.expect(verify_duality_tau(NCPoly(z, w), num));
  const double z2 = mzv_partial({2}, 1000000);
  o.expect(std::fabs(z2 - 1.6449340668) <= 1e-5, "zeta(2) partial sum " + to_text(z2));
  return o;
}

Outcome oracle() {
  Outcome o;
  for (std::string_view name : {"stuffle", "qstuffle", "shuffle"}) {
    auto mismatch = classical_mismatch(name, 6);
    o.expect(!mismatch, std::string(name) + ": " + mismatch.value_or(""));
  }
  return o;
}

Outcome cli_contract() {
  Outcome o;
  auto run = [](std::vector<std::string> args, int& code) {
    std::ostringstream out, err;
    code = cli::run(args, out, err);
    return out.str();
  };
  struct Case {
    std::vector<std::string> args;
    std::string want;
  };
  const std::vector<Case> cases{
      {{"prod", "--product", "qshuffle", "e2", "e3"},
       "h^2 e2 e1 + 2 h e2 e2 + e2 e3 + 2 h^2 e3 e0 + 7 h e3 e1 + 3 e3 e2 + 3 h e4 e0 + 6 e4 e1\n"},
      {{"eval-q", "--order", "5", "e1"}, "q + q^2 + q^4 - q^5 + O(q^6)\n"},
      {{"check", "--check", "ds-identity", "--u", "z2", "--v", "z2"}, "exact-pass\n"}};
  for (const auto& c : cases) {
    int code = 0;
    std::string got = run(c.args, code);
    o.expect(code == 0 && got == c.want, c.args.front() + ": got '" + got + "'");
  }
  int code = 0;
  std::string j = run({"prod", "--product", "qshuffle", "e2", "e3", "--format", "json"}, code);
  std::string t = run({"prod", "--product", "qshuffle", "e2", "e3"}, code);
  o.expect(poly_from_json(json::parse(j)) == P(t), "JSON does not round-trip");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "worked examples", worked_examples},
      {2, "exact q-series homomorphism", q_homomorphism},
      {3, "operator and polylogarithm suite", operator_suite},
      {4, "associativity suites", associativity},
      {5, "duality suites", duality},
      {6, "numeric MZV checks", numeric_mzv},
      {7, "classical oracle cross-check", oracle},
      {8, "CLI contract", cli_contract},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = Clock::now();
    Outcome o = c.run();
    const double s = seconds_since(t0);
    const bool ok = o.failures.empty();
    failed += !ok;
    std::printf("%s %d %s (%.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.title, s);
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsh/format.hpp"
#include "qsh/parser.hpp"
#include "qsh/relations.hpp"
#include "qsh/series.hpp"

namespace qsh::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage_error = 2 };

/// Names accepted by `check --check`.
inline const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{
      "product-hom", "duality-tau",  "ds",          "q-duality",   "generalized-dual", "dual-stuffle",
      "ds-identity", "assoc-comm",   "dualst",      "commutative", "decomposable",     "associative"};
  return ids;
}

namespace detail {

struct Options {
  std::string format = "text";
  // prod
  std::string product;
  std::string rule_file;
  std::vector<std::string> exprs;
  // series
  int order = default_q_order;
  int zorder = default_z_order;
  long cutoff = default_cutoff;
  // check
  std::string check;
  std::string u, v, w, seed, rule;
  double tol = default_tolerance;
  int length = 7;
  std::optional<int> weight;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read rule file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline DiamondRule load_rule(const Options& o) {
  if (!o.rule_file.empty()) return parse_rule(read_file(o.rule_file), o.rule_file);
  if (!o.rule.empty()) return builtin_rule(o.rule);
  throw std::invalid_argument("this command needs --rule or --rule-file");
}

inline const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw std::invalid_argument(std::string("missing ") + flag);
  return value;
}

inline void emit(std::ostream& out, const Options& o, const std::string& text, const json& j) {
  if (o.format == "json") out << j.dump() << '\n';
  else out << text << '\n';
}

inline int cmd_prod(const Options& o, std::ostream& out) {
  if (o.exprs.empty() || o.exprs.size() > 2) throw std::invalid_argument("prod takes one or two expressions");
  NCPoly result(alphabets::xy());
  if (!o.rule_file.empty() || !o.rule.empty() || (!o.product.empty() && o.exprs.size() == 2)) {
    if (o.exprs.size() != 2) throw std::invalid_argument("a product needs two expressions");
    if (!o.product.empty() && o.rule_file.empty()) {
      const AlphabetRef& a = builtin_handle(o.product).alphabet();
      NCPoly u = parse_poly(o.exprs[0], a), v = parse_poly(o.exprs[1], a);
      if (std::find(product_names().begin(), product_names().end(), o.product) != product_names().end()) {
        result = named_product(o.product, u, v);
      } else {
        const ProductHandle& h = builtin_handle(o.product);
        result = gqsh(h, qsh::detail::promote(u, a), qsh::detail::promote(v, a));
      }
    } else {
      ProductHandle h(load_rule(o));
      const AlphabetRef& a = h.alphabet();
      NCPoly u = qsh::detail::promote(parse_poly(o.exprs[0], a, a), a);
      NCPoly v = qsh::detail::promote(parse_poly(o.exprs[1], a, a), a);
      result = gqsh(h, u, v);
    }
  } else {
    if (o.exprs.size() != 1) throw std::invalid_argument("two expressions need --product or --rule-file");
    AlphabetRef ctx = o.product.empty() ? alphabets::xy() : builtin_handle(o.product).alphabet();
    result = parse_poly(o.exprs[0], ctx);
  }
  emit(out, o, to_text(result), to_json(result));
  return ok;
}

inline const std::string& single_expr(const Options& o) {
  if (o.exprs.size() != 1) throw std::invalid_argument("expected exactly one expression");
  return o.exprs.front();
}

inline int cmd_eval_q(const Options& o, std::ostream& out) {
  QSeries s = zeta_q(parse_poly(single_expr(o), alphabets::e()), o.order);
  emit(out, o, to_text(s), to_json(s));
  return ok;
}

inline int cmd_eval_mzv(const Options& o, std::ostream& out) {
  const double x = mzv_partial(parse_poly(single_expr(o), alphabets::z()), o.cutoff);
  emit(out, o, to_text(x), json{{"value", x}, {"cutoff", o.cutoff}});
  return ok;
}

inline int cmd_act(const Options& o, std::ostream& out) {
  QZSeries g = act(parse_poly(single_expr(o), alphabets::ab()), QZSeries::one(o.order, o.zorder));
  emit(out, o, to_text(g), to_json(g));
  return ok;
}

inline CheckResult property_check(const DiamondRule& rule, Property p, int bound) {
  PropertyReport rep = p == Property::commutative    ? check_commutative(rule, bound)
                       : p == Property::decomposable ? check_decomposable(rule, bound)
                                                     : check_associative(rule, bound);
  std::string inputs = "rule=" + rule.name() + ", bound=" + std::to_string(bound);
  if (p == Property::decomposable && rep.holds) inputs += ", tail=" + to_string(rep.common_tail, *rule.alphabet());
  return CheckResult{to_string(p), inputs, rep.holds ? CheckStatus::exact_pass : CheckStatus::fail, std::nullopt,
                     rep.witness ? rep.witness->detail : std::string()};
}

inline CheckResult run_check(const Options& o) {
  const std::string& id = o.check;
  const NumericParams num{o.cutoff, o.tol};
  const auto& z = alphabets::z();
  const auto& e = alphabets::e();
  auto pair_over = [&](const AlphabetRef& a) {
    return std::make_pair(parse_poly(need(o.u, "--u"), a), parse_poly(need(o.v, "--v"), a));
  };
  if (id == "product-hom") {
    const std::string& p = need(o.product, "--product");
    const bool q = p == "qstuffle" || p == "qshuffle";
    auto [u, v] = pair_over(q ? e : z);
    return verify_product_hom(p, u, v, o.order, num);
  }
  if (id == "duality-tau") return verify_duality_tau(parse_poly(need(o.w, "--w"), z), num);
  if (id == "ds") {
    auto [u, v] = pair_over(z);
    return verify_ds(u, v, num);
  }
  if (id == "q-duality") {
    auto [u, v] = pair_over(e);
    return verify_q_duality(u, v);
  }
  if (id == "generalized-dual") return verify_generalized_dual(parse_poly(need(o.seed, "--seed"), e), o.weight.value_or(4));
  if (id == "dual-stuffle") {
    auto [u, v] = pair_over(z);
    return verify_dual_stuffle(u, v);
  }
  if (id == "ds-identity") {
    auto [u, v] = pair_over(z);
    return verify_ds_identity(u, v);
  }
  if (id == "assoc-comm") return verify_assoc_comm(ProductHandle(load_rule(o)), o.weight.value_or(o.length));
  if (id == "dualst") {
    ProductHandle h(load_rule(o));
    const AlphabetRef& a = h.alphabet();
    NCPoly u = qsh::detail::promote(parse_poly(need(o.u, "--u"), a, a), a);
    NCPoly v = qsh::detail::promote(parse_poly(need(o.v, "--v"), a, a), a);
    return verify_dualst(h, u, v);
  }
  for (Property p : {Property::commutative, Property::decomposable, Property::associative})
    if (id == to_string(p)) return property_check(load_rule(o), p, o.weight.value_or(default_weight_bound));
  throw unknown_name("unknown check '" + id + "'");
}

inline int cmd_check(const Options& o, std::ostream& out) {
  CheckResult r = run_check(o);
  emit(out, o, to_text(r), json::array({to_json(r)}));
  return r.passed() ? ok : check_failed;
}

inline int cmd_relations(const Options& o, std::ostream& out) {
  if (!o.weight) throw std::invalid_argument("relations needs --weight");
  auto rels = enumerate_ds_relations(*o.weight, o.cutoff);
  std::string text;
  json j = json::array();
  for (const auto& r : rels) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "  [residual %.3e]", r.residual);
    if (!text.empty()) text += '\n';
    text += "ds(" + to_text(r.u) + ", " + to_text(r.v) + ") = " + to_text(r.relation) + buf;
    j.push_back(to_json(r));
  }
  emit(out, o, text, j);
  return ok;
}

}  // namespace detail

/// Runs the command line `args` (without the program name). Returns 0 on
/// success, 1 when a requested check fails, 2 on usage or input errors.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  detail::Options o;
  CLI::App app{"Generalized quasi-shuffle products, q-zeta values and double shuffle relations", "qsh"};
  app.require_subcommand(1);

  auto add_format = [&o](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  };
  std::vector<std::string> rule_names = builtin_rule_names();

  auto* prod = app.add_subcommand("prod", "Normalize an expression, or multiply two");
  prod->add_option("--product", o.product, "Built-in product")->check(CLI::IsMember(rule_names));
  prod->add_option("--rule-file", o.rule_file, "Rule description file");
  prod->add_option("exprs", o.exprs, "One or two expressions")->required();
  add_format(prod);

  auto* evq = app.add_subcommand("eval-q", "Evaluate zeta_q on a combination of e-words");
  evq->add_option("--order", o.order, "q truncation order")->capture_default_str()->check(CLI::NonNegativeNumber);
  evq->add_option("exprs", o.exprs, "Expression")->required();
  add_format(evq);

  auto* evm = app.add_subcommand("eval-mzv", "Partial sum of zeta on a combination of z-words");
  evm->add_option("--cutoff", o.cutoff, "Largest summation index")->capture_default_str()->check(CLI::PositiveNumber);
  evm->add_option("exprs", o.exprs, "Expression")->required();
  add_format(evm);

  auto* actc = app.add_subcommand("act", "Apply an a,b combination to 1 in Q[[q,z]]");
  actc->add_option("--order", o.order, "q truncation order")->capture_default_str()->check(CLI::NonNegativeNumber);
  actc->add_option("--zorder", o.zorder, "z truncation order")->capture_default_str()->check(CLI::NonNegativeNumber);
  actc->add_option("exprs", o.exprs, "Expression")->required();
  add_format(actc);

  auto* chk = app.add_subcommand("check", "Run one verification");
  chk->add_option("--check", o.check, "Check id")->required()->check(CLI::IsMember(check_ids()));
  chk->add_option("--u", o.u, "First operand");
  chk->add_option("--v", o.v, "Second operand");
  chk->add_option("--w", o.w, "Word for duality-tau");
  chk->add_option("--seed", o.seed, "e0 <> e0 for generalized-dual");
  chk->add_option("--rule", o.rule, "Built-in rule")->check(CLI::IsMember(rule_names));
  chk->add_option("--rule-file", o.rule_file, "Rule description file");
  chk->add_option("--product", o.product, "Product for product-hom")->check(CLI::IsMember(product_names()));
  chk->add_option("--order", o.order, "q truncation order")->capture_default_str()->check(CLI::NonNegativeNumber);
  chk->add_option("--cutoff", o.cutoff, "Partial-sum cutoff")->capture_default_str()->check(CLI::PositiveNumber);
  chk->add_option("--tol", o.tol, "Numeric tolerance")->capture_default_str()->check(CLI::NonNegativeNumber);
  chk->add_option("--length", o.length, "Total weight bound for assoc-comm")->capture_default_str();
  chk->add_option("--weight", o.weight, "Weight bound");
  add_format(chk);

  auto* rel = app.add_subcommand("relations", "List double shuffle relations of one weight");
  rel->add_option("--weight", o.weight, "Total weight")->required();
  rel->add_option("--cutoff", o.cutoff, "Partial-sum cutoff")->capture_default_str()->check(CLI::PositiveNumber);
  add_format(rel);

  std::vector<const char*> argv{"qsh"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : usage_error;
  }

  try {
    if (prod->parsed()) return detail::cmd_prod(o, out);
    if (evq->parsed()) return detail::cmd_eval_q(o, out);
    if (evm->parsed()) return detail::cmd_eval_mzv(o, out);
    if (actc->parsed()) return detail::cmd_act(o, out);
    if (chk->parsed()) return detail::cmd_check(o, out);
    if (rel->parsed()) return detail::cmd_relations(o, out);
  } catch (const parse_error& e) {
    err << "parse error: " << e.what();
    if (!e.expected().empty()) {
      err << " (expected";
      for (std::size_t i = 0; i < e.expected().size(); ++i) err << (i ? ", " : " ") << e.expected()[i];
      err << ')';
    }
    err << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
  return usage_error;
}

}  // namespace qsh::cli

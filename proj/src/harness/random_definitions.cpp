#include <set>

#include "schemaind/errors.hpp"
#include "schemaind/evaluate.hpp"
#include "schemaind/harness.hpp"

namespace schemaind::harness {
namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }
bool coin(std::mt19937_64& rng, std::size_t one_in) { return rng() % one_in == 0; }

OrderedClause random_clause(const Schema& schema, SymbolId target, std::size_t head_arity, std::size_t n_vars,
                            std::mt19937_64& rng) {
  OrderedClause c;
  c.head.predicate = target;
  for (std::size_t i = 0; i < head_arity; ++i) c.head.args.push_back(Term::variable(static_cast<VarId>(i + 1)));
  VarId used = static_cast<VarId>(head_arity);
  std::set<VarId> in_body;
  const auto& rels = schema.relations();
  auto pick_relation = [&](std::size_t& arity) {
    std::size_t k = uniform(rng, rels.size() + 1);
    if (k == rels.size()) {
      arity = head_arity;
      return target;
    }
    arity = rels[k].arity();
    return intern(rels[k].name);
  };
  auto missing_head = [&] {
    for (VarId v = 1; v <= head_arity; ++v)
      if (!in_body.count(v)) return v;
    return VarId{0};
  };
  auto add_literal = [&](bool allow_fresh) {
    std::size_t arity = 0;
    SymbolId pred = pick_relation(arity);
    Atom lit;
    lit.predicate = pred;
    for (std::size_t p = 0; p < arity; ++p) {
      Term t;
      if (allow_fresh && used < n_vars && (used == 0 || coin(rng, 2))) {
        t = Term::variable(++used);
      } else if (VarId m = missing_head(); allow_fresh && m != 0 && coin(rng, 2)) {
        t = Term::variable(m);
      } else {
        t = Term::variable(static_cast<VarId>(1 + uniform(rng, used)));
      }
      in_body.insert(t.id);
      lit.args.push_back(t);
    }
    c.body.push_back(std::move(lit));
  };
  for (std::size_t guard = 0; (used < n_vars || missing_head() != 0) && guard < 10'000; ++guard) add_literal(true);
  if (used < n_vars || missing_head() != 0) throw InternalError("random clause generation did not converge");
  while (coin(rng, 4)) add_literal(false);
  return c;
}

}  // namespace

HornDefinition generate_random_definition(const Schema& schema, std::size_t n_clauses, std::size_t n_vars,
                                          std::mt19937_64& rng, const std::string& target) {
  if (n_vars < 1) throw ConfigError("a clause needs at least one variable");
  if (n_clauses < 1) throw ConfigError("a definition needs at least one clause");
  if (schema.relations().empty()) throw ConfigError("schema has no relations");
  if (schema.contains(target)) throw ConfigError("target " + target + " is a schema relation");
  const std::size_t max_arity = std::min(schema.max_arity(), n_vars);
  const std::size_t arity = 1 + uniform(rng, max_arity);
  const SymbolId pred = intern(target);
  HornDefinition def;
  for (std::size_t i = 0; i < n_clauses; ++i) def.clauses.push_back(random_clause(schema, pred, arity, n_vars, rng));
  return def;
}

SuiteReport cross_schema_definition_suite(const transform::Transformation& tau, const SuiteParams& params) {
  SuiteReport report;
  std::mt19937_64 rng(params.seed);
  const auto& src = tau.source();
  const auto& tgt = tau.target();
  for (std::size_t clauses = params.min_clauses; clauses <= params.max_clauses; ++clauses)
    for (std::size_t vars = params.min_vars; vars <= params.max_vars; ++vars)
      for (std::size_t k = 0; k < params.per_setting; ++k) {
        SuiteRow row;
        row.clauses = clauses;
        row.vars = vars;
        auto h = generate_random_definition(src, clauses, vars, rng);
        auto g = transform::map_definition(tau, h, transform::Direction::Forward);
        row.definition = to_string(h);
        for (std::size_t t = 0; t < params.instances && row.evaluation_equal; ++t) {
          auto inst = transform::random_instance(tau.source_ptr(), rng, params.tuples_per_relation,
                                                 params.tuples_per_relation / 2 + 2);
          auto image = transform::apply_transformation(tau, inst, transform::Direction::Forward);
          row.evaluation_equal = evaluate_definition(h, inst) == evaluate_definition(g, image);
        }
        for (const auto& c : g.clauses) row.body_before += c.body.size();
        auto min_h = chase::minimize_definition(h, src);
        auto min_g = chase::minimize_definition(g, tgt);
        for (const auto& c : min_g.definition.clauses) row.body_after += c.body.size();
        auto mapped = transform::map_definition(tau, min_h.definition, transform::Direction::Forward);
        row.equivalence = chase::definitions_equivalent(mapped, min_g.definition, tgt);
        if (!row.evaluation_equal) ++report.evaluation_failures;
        if (row.equivalence == chase::Verdict::NotEquivalent) ++report.equivalence_failures;
        if (row.equivalence == chase::Verdict::Unknown) ++report.unknown;
        report.rows.push_back(std::move(row));
      }
  return report;
}

}  // namespace schemaind::harness

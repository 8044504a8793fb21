#include "schemaind/transform.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "schemaind/errors.hpp"
#include "schemaind/evaluate.hpp"
#include "schemaind/io.hpp"

namespace schemaind::transform {
namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

// Clause over named attributes: one variable per attribute name.
struct NameVars {
  std::map<std::string, VarId> ids;
  Term operator()(const std::string& name) {
    auto [it, inserted] = ids.emplace(name, static_cast<VarId>(ids.size() + 1));
    return Term::variable(it->second);
  }
  Atom atom(const RelationDecl& rel) {
    std::vector<Term> args;
    for (const auto& a : rel.attributes) args.push_back((*this)(a));
    return Atom(rel.name, std::move(args));
  }
};

OrderedClause identity_clause(const RelationDecl& rel) {
  NameVars v;
  Atom a = v.atom(rel);
  return {a, {a}};
}

bool is_identity_clause(const OrderedClause& c) { return c.body.size() == 1 && c.body[0] == c.head; }

RelationKind kind_of(const OrderedClause& c) {
  if (is_identity_clause(c)) return RelationKind::Identity;
  return c.body.size() > 1 ? RelationKind::Composed : RelationKind::Decomposed;
}

std::set<std::string> as_set(const std::vector<std::string>& xs) { return {xs.begin(), xs.end()}; }

std::vector<FD> fds_of(const Schema& s, const std::string& rel) {
  std::vector<FD> out;
  for (const FD* fd : s.fds_of(rel)) out.push_back(*fd);
  return out;
}

std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> closure_key(
    const std::vector<std::string>& universe, const std::vector<FD>& fds) {
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> out;
  for (const auto& fd : closure_over(universe, fds, "")) out.emplace_back(fd.lhs, fd.rhs);
  std::sort(out.begin(), out.end());
  return out;
}

Stage identity_stage(std::shared_ptr<const Schema> schema, Step step) {
  Stage st{schema, schema, {}, {}, {}, std::move(step)};
  for (const auto& rel : schema->relations()) {
    st.forward.push_back(identity_clause(rel));
    st.inverse.push_back(identity_clause(rel));
    st.kinds.push_back(RelationKind::Identity);
  }
  return st;
}

Step invert_step(const Stage& st) {
  if (const auto* d = std::get_if<DecomposeStep>(&st.step)) {
    ComposeStep c;
    for (const auto& comp : d->components) c.relations.push_back(comp.name);
    c.target = d->relation;
    return c;
  }
  const auto& c = std::get<ComposeStep>(st.step);
  DecomposeStep d;
  d.relation = c.target;
  for (const auto& name : c.relations) d.components.push_back({name, st.source->relation(name).attributes});
  return d;
}

// Unfolds literals whose predicate is defined by `program`.
OrderedClause unfold(const OrderedClause& clause, const std::vector<OrderedClause>& program) {
  std::unordered_map<SymbolId, const OrderedClause*> defs;
  for (const auto& c : program) defs.emplace(c.head.predicate, &c);
  VarId next = max_variable(clause) + 1;
  OrderedClause out;
  out.head = clause.head;
  for (const auto& lit : clause.body) {
    auto it = defs.find(lit.predicate);
    if (it == defs.end() || it->second->head.arity() != lit.arity()) {
      out.body.push_back(lit);
      continue;
    }
    const OrderedClause& def = *it->second;
    Substitution theta;
    for (std::size_t i = 0; i < lit.arity(); ++i) theta.emplace(def.head.args[i].id, lit.args[i]);
    for (const auto& b : def.body)
      for (Term t : b.args)
        if (t.is_variable() && !theta.count(t.id)) theta.emplace(t.id, Term::variable(next++));
    for (const auto& b : def.body) out.body.push_back(schemaind::apply(theta, b));
  }
  return out;
}

}  // namespace

TransformationSpec parse_spec(std::string_view text) {
  TransformationSpec spec;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) { throw ParseError(msg, line_no, 1); };
    auto into = line.find(" into ");
    if (into == std::string::npos) fail("expected '<keyword> ... into ...'");
    auto first_space = line.find(' ');
    std::string keyword = line.substr(0, first_space);
    std::string lhs = trim(line.substr(first_space, into - first_space));
    std::string rhs = trim(line.substr(into + 6));
    if (keyword == "decompose") {
      DecomposeStep d;
      d.relation = lhs;
      if (!is_identifier(lhs)) fail("bad relation name '" + lhs + "'");
      for (const auto& part : split(rhs, ';')) {
        if (part.empty()) continue;
        auto open = part.find('('), close = part.rfind(')');
        if (open == std::string::npos || close == std::string::npos || close < open || close + 1 != part.size())
          fail("expected <name>(<attrs>) in '" + part + "'");
        Component comp{trim(part.substr(0, open)), split(part.substr(open + 1, close - open - 1), ',')};
        if (!is_identifier(comp.name)) fail("bad component name '" + comp.name + "'");
        for (const auto& a : comp.attributes)
          if (!is_identifier(a)) fail("bad attribute name '" + a + "'");
        d.components.push_back(std::move(comp));
      }
      if (d.components.empty()) fail("decompose needs at least one component");
      spec.steps.emplace_back(std::move(d));
    } else if (keyword == "compose") {
      ComposeStep c;
      c.relations = split(lhs, ',');
      c.target = rhs;
      for (const auto& r : c.relations)
        if (!is_identifier(r)) fail("bad relation name '" + r + "'");
      if (!is_identifier(rhs)) fail("bad relation name '" + rhs + "'");
      spec.steps.emplace_back(std::move(c));
    } else {
      fail("unknown step '" + keyword + "'");
    }
  }
  return spec;
}

std::string to_text(const TransformationSpec& spec) {
  std::string out;
  for (const auto& step : spec.steps) {
    if (const auto* d = std::get_if<DecomposeStep>(&step)) {
      out += "decompose " + d->relation + " into ";
      for (std::size_t i = 0; i < d->components.size(); ++i)
        out += (i ? "; " : "") + d->components[i].name + "(" + join(d->components[i].attributes, ",") + ")";
    } else {
      const auto& c = std::get<ComposeStep>(step);
      out += "compose " + join(c.relations, ",") + " into " + c.target;
    }
    out += "\n";
  }
  return out;
}

Transformation::Transformation(std::shared_ptr<const Schema> schema) : source_(std::move(schema)) {}

Transformation::Transformation(std::shared_ptr<const Schema> source, std::vector<Stage> stages)
    : source_(std::move(source)), stages_(std::move(stages)) {}

Transformation Transformation::inverse() const {
  std::vector<Stage> out;
  for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) {
    Stage st{it->target, it->source, it->inverse, it->forward, {}, invert_step(*it)};
    for (const auto& c : st.forward) st.kinds.push_back(kind_of(c));
    out.push_back(std::move(st));
  }
  return Transformation(target_ptr(), std::move(out));
}

Transformation Transformation::then(const Transformation& next) const {
  if (!target().equivalent_to(next.source()))
    throw ConfigError("cannot chain transformations: schemas do not match");
  std::vector<Stage> all = stages_;
  all.insert(all.end(), next.stages_.begin(), next.stages_.end());
  return Transformation(source_, std::move(all));
}

TransformationSpec Transformation::spec() const {
  TransformationSpec s;
  for (const auto& st : stages_) s.steps.push_back(st.step);
  return s;
}

Stage decompose(std::shared_ptr<const Schema> schema, const DecomposeStep& step) {
  const RelationDecl& rel = schema->relation(step.relation);
  const auto attrs = as_set(rel.attributes);
  if (step.components.empty()) throw ConfigError("decompose " + rel.name + ": no components");
  std::set<std::string> all;
  std::set<std::string> shared = attrs;
  for (const auto& comp : step.components) {
    auto cs = as_set(comp.attributes);
    if (cs.size() != comp.attributes.size()) throw ConfigError("component " + comp.name + " repeats an attribute");
    if (cs.empty()) throw ConfigError("component " + comp.name + " has no attributes");
    for (const auto& a : cs)
      if (!attrs.count(a)) throw ConfigError("component " + comp.name + " uses unknown attribute " + a);
    all.insert(cs.begin(), cs.end());
    std::set<std::string> keep;
    std::set_intersection(shared.begin(), shared.end(), cs.begin(), cs.end(), std::inserter(keep, keep.end()));
    shared = std::move(keep);
  }
  if (all != attrs) throw ConfigError("decompose " + rel.name + ": components do not cover every attribute");
  if (step.components.size() == 1) {
    if (step.components[0].name != rel.name) throw ConfigError("single-component decomposition must keep the name " + rel.name);
    return identity_stage(schema, step);
  }
  if (shared.empty()) throw ConfigError("decompose " + rel.name + ": components share no attribute");
  if (shared == attrs) throw ConfigError("decompose " + rel.name + ": components share every attribute");
  for (std::size_t i = 0; i < step.components.size(); ++i)
    for (std::size_t j = i + 1; j < step.components.size(); ++j) {
      auto a = as_set(step.components[i].attributes), b = as_set(step.components[j].attributes);
      std::set<std::string> both;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(both, both.end()));
      if (both != shared)
        throw ConfigError("components " + step.components[i].name + " and " + step.components[j].name +
                          " share attributes beyond the common ones");
    }
  std::vector<std::string> key;
  for (const auto& a : rel.attributes)
    if (shared.count(a)) key.push_back(a);
  const auto rel_fds = fds_of(*schema, rel.name);
  auto key_closure = as_set(attribute_closure(key, rel_fds));
  for (const auto& comp : step.components)
    for (const auto& a : comp.attributes)
      if (!key_closure.count(a))
        throw ConfigError("decompose " + rel.name + ": shared attributes (" + join(key, ",") + ") do not determine " +
                          a + " of " + comp.name);

  std::vector<RelationDecl> relations;
  for (const auto& r : schema->relations()) {
    if (r.name != rel.name) {
      relations.push_back(r);
      continue;
    }
    for (const auto& comp : step.components) relations.push_back({comp.name, comp.attributes});
  }
  auto home = [&](const std::set<std::string>& needed) -> const Component* {
    for (const auto& comp : step.components) {
      auto cs = as_set(comp.attributes);
      if (std::includes(cs.begin(), cs.end(), needed.begin(), needed.end())) return &comp;
    }
    return nullptr;
  };
  std::vector<FD> fds;
  std::vector<FD> target_rel_fds;
  for (const auto& fd : schema->fds()) {
    if (fd.relation != rel.name) {
      fds.push_back(fd);
      continue;
    }
    for (const auto& a : fd.rhs) {
      if (std::find(fd.lhs.begin(), fd.lhs.end(), a) != fd.lhs.end()) continue;
      auto needed = as_set(fd.lhs);
      needed.insert(a);
      const Component* comp = home(needed);
      if (!comp) throw ConfigError("FD " + join(fd.lhs, ",") + " -> " + a + " of " + rel.name + " fits no component");
      FD moved{comp->name, fd.lhs, {a}};
      fds.push_back(moved);
      target_rel_fds.push_back(moved);
    }
  }
  if (closure_key(rel.attributes, rel_fds) != closure_key(rel.attributes, target_rel_fds))
    throw ConfigError("decompose " + rel.name + ": FD closure not preserved");

  std::vector<IND> inds;
  for (IND ind : schema->inds()) {
    auto retarget = [&](std::string& relation, const std::vector<std::string>& attributes) {
      if (relation != rel.name) return;
      const Component* comp = home(as_set(attributes));
      if (!comp) throw ConfigError("IND on " + rel.name + "[" + join(attributes, ",") + "] fits no component");
      relation = comp->name;
    };
    retarget(ind.lhs_relation, ind.lhs_attributes);
    retarget(ind.rhs_relation, ind.rhs_attributes);
    inds.push_back(std::move(ind));
  }
  for (std::size_t i = 0; i < step.components.size(); ++i)
    for (std::size_t j = i + 1; j < step.components.size(); ++j)
      inds.push_back({step.components[i].name, key, step.components[j].name, key, true});

  auto target = std::make_shared<const Schema>(std::move(relations), std::move(fds), std::move(inds));
  Stage st{schema, target, {}, {}, {}, step};
  for (const auto& r : target->relations()) {
    bool component = std::any_of(step.components.begin(), step.components.end(),
                                 [&](const Component& c) { return c.name == r.name; });
    if (!component) {
      st.forward.push_back(identity_clause(r));
      st.kinds.push_back(RelationKind::Identity);
      continue;
    }
    NameVars v;
    OrderedClause c;
    c.head = v.atom(r);
    c.body.push_back(v.atom(rel));
    st.forward.push_back(std::move(c));
    st.kinds.push_back(RelationKind::Decomposed);
  }
  for (const auto& r : schema->relations()) {
    if (r.name != rel.name) {
      st.inverse.push_back(identity_clause(r));
      continue;
    }
    NameVars v;
    OrderedClause c;
    c.head = v.atom(r);
    for (const auto& comp : step.components) c.body.push_back(v.atom({comp.name, comp.attributes}));
    st.inverse.push_back(std::move(c));
  }
  return st;
}

Stage compose(std::shared_ptr<const Schema> schema, const ComposeStep& step) {
  if (step.relations.empty()) throw ConfigError("compose: no relations listed");
  std::set<std::string> members;
  for (const auto& r : step.relations) {
    schema->relation(r);
    if (!members.insert(r).second) throw ConfigError("compose: " + r + " listed twice");
  }
  bool is_class = false;
  for (const auto& cls : inclusion_classes(*schema))
    if (as_set(cls) == members) is_class = true;
  if (!is_class) throw ConfigError("compose: {" + join(step.relations, ",") + "} is not an inclusion class");
  if (step.relations.size() == 1) {
    if (step.target != step.relations[0]) throw ConfigError("composing a single relation must keep its name");
    return identity_stage(schema, step);
  }
  std::optional<std::set<std::string>> shared;
  for (const auto& ind : schema->inds()) {
    if (!ind.equality || !members.count(ind.lhs_relation) || !members.count(ind.rhs_relation)) continue;
    if (ind.lhs_attributes != ind.rhs_attributes)
      throw ConfigError("compose: IND between " + ind.lhs_relation + " and " + ind.rhs_relation +
                        " does not match attributes by name");
    auto s = as_set(ind.lhs_attributes);
    if (shared && *shared != s) throw ConfigError("compose: class INDs are not all on the same attributes");
    shared = s;
  }
  std::vector<std::string> attributes;
  std::set<std::string> seen;
  for (const auto& r : step.relations) {
    const auto& decl = schema->relation(r);
    for (const auto& a : decl.attributes) {
      if (!shared->count(a) && seen.count(a))
        throw ConfigError("compose: attribute " + a + " occurs in more than one relation");
      if (seen.insert(a).second) attributes.push_back(a);
    }
    std::vector<std::string> key(shared->begin(), shared->end());
    auto closure = as_set(attribute_closure(key, fds_of(*schema, r)));
    for (const auto& a : decl.attributes)
      if (!closure.count(a)) throw ConfigError("compose: shared attributes are not a key of " + r);
  }
  RelationDecl composed{step.target, attributes};

  std::vector<RelationDecl> relations;
  bool placed = false;
  for (const auto& r : schema->relations()) {
    if (!members.count(r.name)) {
      relations.push_back(r);
    } else if (!placed) {
      relations.push_back(composed);
      placed = true;
    }
  }
  std::vector<FD> fds;
  for (FD fd : schema->fds()) {
    if (members.count(fd.relation)) fd.relation = step.target;
    fds.push_back(std::move(fd));
  }
  std::vector<IND> inds;
  for (IND ind : schema->inds()) {
    bool internal = members.count(ind.lhs_relation) && members.count(ind.rhs_relation);
    if (internal && ind.equality) continue;
    if (members.count(ind.lhs_relation)) ind.lhs_relation = step.target;
    if (members.count(ind.rhs_relation)) ind.rhs_relation = step.target;
    inds.push_back(std::move(ind));
  }
  auto target = std::make_shared<const Schema>(std::move(relations), std::move(fds), std::move(inds));
  Stage st{schema, target, {}, {}, {}, step};
  for (const auto& r : target->relations()) {
    if (r.name != step.target) {
      st.forward.push_back(identity_clause(r));
      st.kinds.push_back(RelationKind::Identity);
      continue;
    }
    NameVars v;
    OrderedClause c;
    c.head = v.atom(composed);
    for (const auto& m : step.relations) c.body.push_back(v.atom(schema->relation(m)));
    st.forward.push_back(std::move(c));
    st.kinds.push_back(RelationKind::Composed);
  }
  for (const auto& r : schema->relations()) {
    if (!members.count(r.name)) {
      st.inverse.push_back(identity_clause(r));
      continue;
    }
    NameVars v;
    OrderedClause c;
    c.head = v.atom(r);
    c.body.push_back(v.atom(composed));
    st.inverse.push_back(std::move(c));
  }
  return st;
}

Transformation build(std::shared_ptr<const Schema> schema, const TransformationSpec& spec) {
  std::vector<Stage> stages;
  auto current = schema;
  for (const auto& step : spec.steps) {
    Stage st = std::holds_alternative<DecomposeStep>(step) ? decompose(current, std::get<DecomposeStep>(step))
                                                           : compose(current, std::get<ComposeStep>(step));
    current = st.target;
    stages.push_back(std::move(st));
  }
  return Transformation(std::move(schema), std::move(stages));
}

namespace {

Instance run_program(const std::vector<OrderedClause>& program, const Instance& in,
                     std::shared_ptr<const Schema> destination) {
  Instance::RawData data;
  for (const auto& clause : program) {
    auto& rows = data[clause.head.name()];
    for (const auto& a : evaluate_clause(clause, static_cast<const TableSource&>(in))) {
      Tuple t;
      for (Term x : a.args) t.push_back(x.id);
      rows.push_back(std::move(t));
    }
  }
  return Instance(std::move(destination), data);
}

}  // namespace

Instance apply_transformation(const Transformation& tau, const Instance& instance, Direction direction) {
  const Schema& expected = direction == Direction::Forward ? tau.source() : tau.target();
  if (!instance.schema().equivalent_to(expected))
    throw ConfigError("instance schema does not match the transformation's " +
                      std::string(direction == Direction::Forward ? "source" : "target") + " schema");
  Instance current = instance;
  const auto& stages = tau.stages();
  if (direction == Direction::Forward) {
    for (const auto& st : stages) current = run_program(st.forward, current, st.target);
  } else {
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) current = run_program(it->inverse, current, it->source);
  }
  return current;
}

OrderedClause map_clause(const Transformation& tau, const OrderedClause& clause, Direction direction) {
  const Schema& from = direction == Direction::Forward ? tau.source() : tau.target();
  for (const auto& lit : clause.body) {
    const auto* rel = from.find(lit.name());
    if (!rel && lit.predicate != clause.head.predicate)
      throw ConfigError("clause uses relation " + lit.name() + " outside the source schema");
    if (rel && rel->arity() != lit.arity()) throw ConfigError("arity mismatch for " + lit.name());
  }
  OrderedClause out = clause;
  const auto& stages = tau.stages();
  if (direction == Direction::Forward) {
    for (const auto& st : stages) out = unfold(out, st.inverse);
  } else {
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) out = unfold(out, it->forward);
  }
  return out;
}

HornDefinition map_definition(const Transformation& tau, const HornDefinition& def, Direction direction) {
  HornDefinition out;
  for (const auto& c : def.clauses) out.clauses.push_back(map_clause(tau, c, direction));
  return out;
}

Instance random_instance(std::shared_ptr<const Schema> schema, std::mt19937_64& rng, std::size_t tuples_per_relation,
                         std::size_t pool_size) {
  pool_size = std::max<std::size_t>(pool_size, 1);
  std::map<std::string, std::vector<Value>> pools;
  auto pool = [&](const std::string& attr) -> const std::vector<Value>& {
    auto& p = pools[attr];
    if (p.empty())
      for (std::size_t i = 0; i < pool_size; ++i) p.push_back(intern(attr + std::to_string(i)));
    return p;
  };
  Instance::RawData data;
  for (const auto& rel : schema->relations()) {
    std::set<Tuple> seen;
    auto& rows = data[rel.name];
    for (std::size_t n = 0; n < tuples_per_relation; ++n) {
      Tuple t;
      for (const auto& a : rel.attributes) {
        const auto& p = pool(a);
        t.push_back(p[std::uniform_int_distribution<std::size_t>(0, p.size() - 1)(rng)]);
      }
      if (seen.insert(t).second) rows.push_back(std::move(t));
    }
  }
  auto positions = [&](const std::string& rel, const std::vector<std::string>& attrs) {
    std::vector<std::size_t> out;
    const auto& decl = schema->relation(rel);
    for (const auto& a : attrs) out.push_back(*decl.position(a));
    return out;
  };
  auto project = [](const Tuple& t, const std::vector<std::size_t>& pos) {
    Tuple out;
    for (auto p : pos) out.push_back(t[p]);
    return out;
  };
  auto prune_inclusion = [&](const std::string& lrel, const std::vector<std::string>& lattrs, const std::string& rrel,
                             const std::vector<std::string>& rattrs) {
    auto lpos = positions(lrel, lattrs), rpos = positions(rrel, rattrs);
    std::set<Tuple> targets;
    for (const auto& t : data[rrel]) targets.insert(project(t, rpos));
    auto& rows = data[lrel];
    auto before = rows.size();
    std::erase_if(rows, [&](const Tuple& t) { return !targets.count(project(t, lpos)); });
    return rows.size() != before;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& fd : schema->fds()) {
      auto lpos = positions(fd.relation, fd.lhs), rpos = positions(fd.relation, fd.rhs);
      std::map<Tuple, Tuple> first;
      auto& rows = data[fd.relation];
      auto before = rows.size();
      std::erase_if(rows, [&](const Tuple& t) {
        auto [it, inserted] = first.emplace(project(t, lpos), project(t, rpos));
        return !inserted && it->second != project(t, rpos);
      });
      changed |= rows.size() != before;
    }
    for (const auto& ind : schema->inds()) {
      changed |= prune_inclusion(ind.lhs_relation, ind.lhs_attributes, ind.rhs_relation, ind.rhs_attributes);
      if (ind.equality)
        changed |= prune_inclusion(ind.rhs_relation, ind.rhs_attributes, ind.lhs_relation, ind.lhs_attributes);
    }
  }
  return Instance(std::move(schema), data);
}

BijectionReport verify_bijection(const Transformation& tau, const std::vector<Instance>& instances,
                                 std::size_t random_trials, std::uint64_t seed) {
  BijectionReport report;
  if (instances.empty() && random_trials == 0) {
    report.no_evidence = true;
    return report;
  }
  auto check = [&](const Instance& inst, Direction first, const char* label) {
    if (!report.passed) return;
    Direction second = first == Direction::Forward ? Direction::Inverse : Direction::Forward;
    ++report.instances_checked;
    report.total_tuples += inst.total_tuples();
    try {
      Instance back = apply_transformation(tau, apply_transformation(tau, inst, first), second);
      if (!back.same_content(inst)) {
        report.passed = false;
        report.counterexample = std::string(label) + " round trip changed the instance:\n" + facts_text(inst);
      }
    } catch (const ConstraintViolation& e) {
      report.passed = false;
      report.counterexample = std::string(label) + " round trip produced an invalid instance (" + e.what() + "):\n" +
                              facts_text(inst);
    }
  };
  for (const auto& inst : instances) check(inst, Direction::Forward, "source");
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < random_trials && report.passed; ++t) {
    std::size_t size = std::uniform_int_distribution<std::size_t>(3, 40)(rng);
    std::size_t pool = std::uniform_int_distribution<std::size_t>(std::max<std::size_t>(2, size / 2), size + 2)(rng);
    check(random_instance(tau.source_ptr(), rng, size, pool), Direction::Forward, "source");
    check(random_instance(tau.target_ptr(), rng, size, pool), Direction::Inverse, "target");
  }
  return report;
}

}  // namespace schemaind::transform

// Command-line front end: learn, transform, verify, independence, randdefs, saturate.
#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "schemaind/errors.hpp"
#include "schemaind/harness.hpp"
#include "schemaind/io.hpp"
#include "schemaind/saturation.hpp"

using namespace schemaind;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kConfig = 2, kData = 3, kDependent = 4;

struct LearnerFlags {
  std::string learner;
  learners::LearnerConfig cfg;
  bool depth_given = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--learner", learner, "foil | mfoil | golem | progolem")->required();
    cmd->add_option("--clause-length", cfg.clause_length, "FOIL body length bound");
    cmd->add_option("--max-inclusion-classes", cfg.max_inclusion_classes, "modified FOIL class bound");
    cmd->add_option("--beam", cfg.beam_width, "ProGolem beam width");
    cmd->add_option("--maxvars", cfg.maxvars, "bottom clause variable bound");
    cmd->add_option("--depth", cfg.max_depth, "depth bound; makes ProGolem use depth-bounded bottoms")
        ->each([this](const std::string&) { depth_given = true; });
    cmd->add_option("--noise", cfg.noise, "allowed fraction of covered negatives");
    cmd->add_option("--seed", cfg.seed, "learner seed");
  }

  learners::LearnerConfig resolve() {
    cfg.algorithm = learners::parse_algorithm(learner);
    cfg.bottom = depth_given ? learners::BottomMode::Depth : learners::BottomMode::MaxVars;
    cfg.validate();
    return cfg;
  }
};

std::shared_ptr<const Schema> load_schema(const std::string& path) {
  return std::make_shared<const Schema>(parse_schema(read_file(path)));
}

transform::Transformation load_tau(const std::string& schema, const std::string& spec) {
  return transform::build(load_schema(schema), transform::parse_spec(read_file(spec)));
}

void prepare(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
}

void write_json(const std::string& path, nlohmann::json result) {
  nlohmann::json doc;
  doc["result"] = std::move(result);
  doc["meta"] = harness::meta_block();
  write_file(path, doc.dump(2) + "\n");
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text, const char* what) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      auto v = std::stoul(text);
      return {v, v};
    }
    return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ConfigError(std::string("bad ") + what + " range '" + text + "' (expected A..B)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relational learning across equivalent schemas"};
  app.require_subcommand(1);

  // learn
  auto* learn = app.add_subcommand("learn", "learn a definition, optionally with cross-validation");
  std::string schema_path, facts_path, examples_path, spec_path, out_dir;
  std::size_t folds = 1;
  LearnerFlags lf;
  learn->add_option("--schema", schema_path)->required();
  learn->add_option("--facts", facts_path)->required();
  learn->add_option("--examples", examples_path)->required();
  learn->add_option("--folds", folds, "cross-validation folds (1 = train on everything)");
  learn->add_option("--out", out_dir)->required();
  lf.add(learn);

  // transform
  auto* tr = app.add_subcommand("transform", "map an instance through a transformation");
  std::string direction;
  tr->add_option("--schema", schema_path)->required();
  tr->add_option("--spec", spec_path)->required();
  tr->add_option("--facts", facts_path)->required();
  tr->add_option("--direction", direction)->required()->check(CLI::IsMember({"fwd", "inv"}));
  tr->add_option("--out", out_dir)->required();

  // verify
  auto* verify = app.add_subcommand("verify", "round-trip random instances through a transformation");
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  verify->add_option("--schema", schema_path)->required();
  verify->add_option("--spec", spec_path)->required();
  verify->add_option("--trials", trials);
  verify->add_option("--seed", seed);

  // independence
  auto* ind = app.add_subcommand("independence", "learn over both schemas and compare");
  std::string expect;
  ind->add_option("--schema", schema_path)->required();
  ind->add_option("--spec", spec_path)->required();
  ind->add_option("--facts", facts_path)->required();
  ind->add_option("--examples", examples_path)->required();
  ind->add_option("--out", out_dir)->required();
  ind->add_option("--expect", expect, "exit 4 unless the verdict matches")->check(CLI::IsMember({"independent"}));
  LearnerFlags ilf;
  ilf.add(ind);

  // randdefs
  auto* rd = app.add_subcommand("randdefs", "random definitions mapped across a transformation");
  std::string clauses_range = "1..5", vars_range = "4..8";
  std::size_t count = 10;
  rd->add_option("--schema", schema_path)->required();
  rd->add_option("--clauses", clauses_range);
  rd->add_option("--vars", vars_range);
  rd->add_option("--count", count, "definitions per (clauses, vars) setting");
  rd->add_option("--seed", seed);
  rd->add_option("--spec", spec_path)->required();
  rd->add_option("--out", out_dir)->required();

  // saturate
  auto* sat = app.add_subcommand("saturate", "print the bottom clause of one example");
  std::string example, mode;
  std::size_t bound = 0;
  sat->add_option("--schema", schema_path)->required();
  sat->add_option("--facts", facts_path)->required();
  sat->add_option("--example", example)->required();
  sat->add_option("--mode", mode)->required()->check(CLI::IsMember({"depth", "maxvars"}));
  sat->add_option("--bound", bound)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*learn) {
      auto cfg = lf.resolve();
      if (folds == 0) throw ConfigError("--folds must be at least 1");
      auto schema = load_schema(schema_path);
      auto examples = parse_examples(read_file(examples_path));
      Instance instance = parse_facts(read_file(facts_path), schema);
      prepare(out_dir);
      auto report = harness::run_experiment(instance, examples, cfg, folds, cfg.seed);
      write_json(out_dir + "/report.json", harness::to_json(report));
      write_file(out_dir + "/metrics.csv", harness::experiment_csv(report));
      write_file(out_dir + "/definition.pl", to_string(report.full_definition));
      std::cout << to_string(report.full_definition);
      if (folds > 1) {
        const auto& m = report.pooled;
        std::cout << "% pooled precision " << (m.precision ? std::to_string(*m.precision) : "undefined")
                  << " recall " << m.recall << '\n';
      }
      return kOk;
    }
    if (*tr) {
      auto tau = load_tau(schema_path, spec_path);
      bool fwd = direction == "fwd";
      auto from = fwd ? tau.source_ptr() : tau.target_ptr();
      auto to = fwd ? tau.target_ptr() : tau.source_ptr();
      Instance in = parse_facts(read_file(facts_path), from);
      prepare(out_dir);
      Instance out = transform::apply_transformation(tau, in, fwd ? transform::Direction::Forward
                                                                  : transform::Direction::Inverse);
      write_file(out_dir + "/schema.txt", to_text(*to));
      write_file(out_dir + "/instance.facts", facts_text(out));
      std::cout << in.total_tuples() << " tuples in, " << out.total_tuples() << " tuples out\n";
      return kOk;
    }
    if (*verify) {
      auto tau = load_tau(schema_path, spec_path);
      auto r = transform::verify_bijection(tau, {}, trials, seed);
      std::cout << (r.passed ? "bijective" : "NOT bijective") << ": " << r.instances_checked << " instances, "
                << r.total_tuples << " tuples";
      if (r.no_evidence) std::cout << " (all random instances were empty)";
      std::cout << '\n';
      if (!r.passed) {
        std::cout << r.counterexample << '\n';
        return kData;
      }
      return kOk;
    }
    if (*ind) {
      auto cfg = ilf.resolve();
      auto tau = load_tau(schema_path, spec_path);
      auto examples = parse_examples(read_file(examples_path));
      Instance instance = parse_facts(read_file(facts_path), tau.source_ptr());
      prepare(out_dir);
      auto pre = transform::verify_bijection(tau, {instance}, 0, 1);
      if (!pre.passed) throw ConstraintViolation("transformation does not round-trip the instance: " +
                                                 pre.counterexample);
      auto report = harness::check_schema_independence(cfg, instance, tau, examples);
      write_json(out_dir + "/independence.json", harness::to_json(report));
      std::cout << harness::to_string(report.overall) << '\n';
      if (!report.witness.empty()) std::cout << "witness: " << report.witness << '\n';
      if (!expect.empty() && report.overall != harness::Overall::Independent) return kDependent;
      return kOk;
    }
    if (*rd) {
      auto tau = load_tau(schema_path, spec_path);
      harness::SuiteParams params;
      std::tie(params.min_clauses, params.max_clauses) = parse_range(clauses_range, "--clauses");
      std::tie(params.min_vars, params.max_vars) = parse_range(vars_range, "--vars");
      if (params.min_clauses == 0 || params.min_vars == 0 || params.min_clauses > params.max_clauses ||
          params.min_vars > params.max_vars)
        throw ConfigError("ranges must be nonempty and start at 1 or more");
      params.per_setting = count;
      params.seed = seed;
      prepare(out_dir);
      auto report = harness::cross_schema_definition_suite(tau, params);
      write_json(out_dir + "/randdefs.json", harness::to_json(report));
      std::cout << report.rows.size() << " definitions, " << report.evaluation_failures << " evaluation failures, "
                << report.equivalence_failures << " equivalence failures, " << report.unknown << " unknown\n";
      return report.evaluation_failures + report.equivalence_failures ? kData : kOk;
    }
    if (*sat) {
      if (bound == 0) throw ConfigError("--bound must be positive");
      Instance instance = parse_facts(read_file(facts_path), load_schema(schema_path));
      auto atom = parse_ground_atom(example);
      saturation::Saturator s(instance);
      auto bottom = mode == "depth" ? s.bottom_depth(atom, static_cast<int>(bound)) : s.bottom_maxvars(atom, bound);
      std::cout << to_string(bottom.clause) << '\n';
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ConstraintViolation& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kOk;
}

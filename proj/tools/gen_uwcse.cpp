// Writes the bundled synthetic UW-CSE family into a data directory:
// original.facts, advisedBy.examples and <name>.schema / <name>.facts for every
// original_to_<name>.spec found next to original.schema.
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "schemaind/harness.hpp"
#include "schemaind/io.hpp"

using namespace schemaind;

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic UW-CSE dataset"};
  std::string dir;
  harness::UwcseParams params;
  std::uint64_t negative_seed = 11;
  app.add_option("--dir", dir, "data/uwcse directory")->required();
  app.add_option("--professors", params.professors);
  app.add_option("--students", params.students);
  app.add_option("--courses", params.courses);
  app.add_option("--seed", params.seed);
  app.add_option("--negative-seed", negative_seed);
  CLI11_PARSE(app, argc, argv);

  try {
    auto schema = std::make_shared<const Schema>(parse_schema(read_file(dir + "/original.schema")));
    auto data = harness::synthetic_uwcse(params);
    Instance original(schema, data.facts);
    write_file(dir + "/original.facts", facts_text(original));

    ExampleSet examples;
    examples.target = intern("advisedBy");
    examples.arity = 2;
    examples.positives = data.positives;
    examples.negatives = harness::sample_negatives(original, data.positives, 2.0, negative_seed).negatives;
    write_file(dir + "/advisedBy.examples", examples_text(examples));

    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      auto file = entry.path().filename().string();
      const std::string prefix = "original_to_";
      if (file.rfind(prefix, 0) != 0 || entry.path().extension() != ".spec") continue;
      auto target = file.substr(prefix.size(), file.size() - prefix.size() - 5);
      auto tau = transform::build(schema, transform::parse_spec(read_file(entry.path().string())));
      write_file(dir + "/" + target + ".schema", to_text(tau.target()));
      write_file(dir + "/" + target + ".facts",
                 facts_text(transform::apply_transformation(tau, original, transform::Direction::Forward)));
    }
    std::cout << original.total_tuples() << " tuples, " << examples.positives.size() << " positives, "
              << examples.negatives.size() << " negatives\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

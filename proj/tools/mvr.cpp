#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mv/errors.hpp"
#include "mv/instance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"multivaluation ring workbench"};
  app.allow_extras(false);

  std::string instancePath;
  bool machine = false;
  uint64_t seed = 0;
  int64_t maxHeight = 0;
  std::vector<std::string> command;

  app.add_option("--instance", instancePath, "instance file")->required();
  app.add_flag("--machine", machine, "line-oriented CHECK output");
  app.add_option("--seed", seed,
                 "sampling order seed; results are seed-independent");
  app.add_option("--max-height", maxHeight, "override the scope height bound");
  app.add_option("command", command, "command and its arguments")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::ifstream in(instancePath);
    if (!in) {
      std::cerr << "cannot open instance file: " << instancePath << "\n";
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    mv::Instance inst = mv::parse_instance(buf.str());
    if (maxHeight > 0) inst.heightBound = maxHeight;
    (void)seed;  // evaluation is exhaustive in canonical order

    mv::Report rep = mv::run_command(inst, command);
    std::cout << rep.render(machine);
    return rep.exit_status();
  } catch (const mv::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const mv::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

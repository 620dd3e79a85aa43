// Transition graphs, attractors and sensitivity level of the two-automaton copy/XNOR network.

#include <iostream>
#include <string>
#include <vector>

#include <banet/banet.hpp>

using namespace banet;

int main()
{
  const std::vector<std::string> formulas{ "x1", "(!x0 & !x1) | (x0 & x1)" };
  const auto net = Network::from_strings( formulas );
  for ( auto mode : { UpdateMode::Parallel, UpdateMode::Asynchronous, UpdateMode::General } )
  {
    const auto tg = build_graph( net, mode );
    std::cout << to_dot( tg, attractors( tg ) ) << attractor_csv( attractors( tg ) ) << "\n";
  }
  const auto r = classify_sensitivity( net );
  std::cout << "sensitivity level: " << to_string( r.level ) << "\n";
  std::cout << "monotony: " << to_string( classify_monotony( net ) ) << "\n";
}

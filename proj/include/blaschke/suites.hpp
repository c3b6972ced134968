#pragma once

#include <iosfwd>
#include <string>

namespace blaschke {

// Named invariant batteries behind the CLI `verify` subcommand:
// inventory, lemma, asymptotics, classify3, topology, itinerary, all.
// Prints one PASS/FAIL line per check; returns false when any check fails.
bool run_suite(const std::string& name, std::ostream& os, int n_threads = 0);

}  // namespace blaschke

// Command-line entry point (monitor / gen / fuzz / bench subcommands),
// factored out of main() so tests can drive it. Exit codes: 0 for a
// positive verdict (or clean fuzz run), 1 for a violation or divergence,
// 2 for usage, format, or I/O problems.
#pragma once

namespace qtwtl {

int run_cli(int argc, const char* const* argv);

} // namespace qtwtl

#pragma once

namespace anonsat::cli {

/// Entry point of the `anonsat` command line tool. Returns the exit status.
int run(int argc, char** argv);

}  // namespace anonsat::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mdt {

/// Entry point of the `mdt` tool with injectable streams. `args[0]` is the
/// program name. Returns 0 on success, 1 on usage errors, 2 on lexicon errors.
int cli_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace mdt

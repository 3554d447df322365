#ifndef SPINMIRROR_IO_JSON_HPP
#define SPINMIRROR_IO_JSON_HPP

#include <string>

#include <json.hpp>

#include "spinmirror/chain.hpp"
#include "spinmirror/design.hpp"
#include "spinmirror/dynamics.hpp"
#include "spinmirror/nogo.hpp"
#include "spinmirror/parity.hpp"
#include "spinmirror/rational.hpp"

namespace spinmirror {

using Json = nlohmann::json;

// Canonical rational emission: integer when the value is an int64 integer,
// plain number when the rational is exactly a double, "p/q" string
// otherwise. Parsing accepts all three (numbers convert exactly).
Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& v);

// ChainSpec schema: {"n": int, "delta": number, "couplings": [...],
// "fields": [...]}; "fields" may be omitted (zeros). Entries may be "p/q".
Json chain_to_json(const ChainSpec& spec);
ChainSpec chain_from_json(const Json& j);

ChainSpec load_chain_file(const std::string& path);

Json identity_report_to_json(const IdentityReport& rep);
Json spmc_to_json(const SpmcVerdict& v);
Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);
Json suite_to_json(const SuiteReport& rep);
Json design_to_json(const DesignResult& res);
Json parity_blocks_to_json(const ParityBlocks& blocks);

}  // namespace spinmirror

#endif

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mtor/bns.hpp"
#include "mtor/gbs.hpp"
#include "mtor/numeric.hpp"
#include "mtor/torus.hpp"
#include "mtor/words.hpp"

namespace mtor {

/// One parsed input file. Exactly one object kind per file:
///   [automorphism]           triangular automorphism of a free group
///   [graph] + [map]          filtered graph map
///   [gog]                    graph of Z^n groups
///   [gbs]                    labeled GBS graph
struct InputDocument {
    enum class Kind { Automorphism, FilteredMap, Gog, Gbs };
    Kind kind = Kind::Automorphism;

    FreeAutomorphism automorphism;
    FilteredGraphMap map;
    GraphOfGroupsZn gog;
    GbsGraph gbs;
};

/// Parses the line-oriented format described in FORMAT.md. Errors carry
/// "file:line:" positions and raise parse_error.
InputDocument parse_document(std::istream& in, const std::string& filename);
InputDocument load_document(const std::string& path);

/// "a=1,b=2,t=0" -> one exact rational per generator (unmentioned
/// generators get 0). Values may be integers or fractions p/q.
std::vector<Rat> parse_phi_assignment(const std::string& text,
                                      const std::vector<std::string>& generators);

std::string rat_to_string(const Rat& r);

}  // namespace mtor

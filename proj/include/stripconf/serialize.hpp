#pragma once

#include "stripconf/algebra.hpp"
#include "stripconf/basis.hpp"
#include "stripconf/homology.hpp"

#include "json.hpp"

namespace stripconf {

using Json = nlohmann::ordered_json;

Json to_json(const ComplexSpec& spec);
Json to_json(const ChainVector& x);
Json to_json(const SpinProgram& program);
Json to_json(const HomologyProfile& p);
Json to_json(const BasisReport& r);
Json to_json(const GeneratorWord& w, std::size_t d, Weight width);  // with degree and barrier count
Json to_json(const WordCombination& x);
Json to_json(const RelationInstance& r, const RelationCheck& c);
Json to_json(const StabilityParams& p);
Json to_json(const GenerationReport& r);
Json to_json(const DecompositionReport& r);

ChainVector chain_from_json(const Json& j);
WordCombination combination_from_json(const Json& j);
SpinProgram program_from_json(const Json& j);

}  // namespace stripconf

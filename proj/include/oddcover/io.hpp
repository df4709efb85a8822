#ifndef ODDCOVER_IO_HPP
#define ODDCOVER_IO_HPP

#include <string>

#include <json.hpp>

#include "oddcover/covering.hpp"
#include "oddcover/elliptic.hpp"
#include "oddcover/enumeration.hpp"
#include "oddcover/spin_residue.hpp"

namespace oddcover
{

using Json = nlohmann::ordered_json;

// Readers throw ParseError on malformed documents; the usual validation
// errors (InvalidPermutation, InvalidTuple, ...) propagate unchanged.

Json to_json(const Permutation &p);
Permutation permutation_from_json(const Json &j);

Json to_json(const MonodromyTuple &t);
MonodromyTuple tuple_from_json(const Json &j);

Json to_json(const RamificationProfile &p);
RamificationProfile profile_from_json(const Json &j);

Json to_json(const SpinParity &s);
Json to_json(const ConditionReport &r);
Json to_json(const QuotientCertificate &q);
Json to_json(const CoveringReport &r);
Json to_json(const ResidueQuadric &q);

/// Batch row form: g,profile,conditions,transitive,odd,all_pass,genus.
std::string covering_csv_header();
std::string covering_csv_row(const CoveringReport &r);

Json to_json(Complex z);
Json to_json(const EllipticSolution &s);
Json to_json(const SolutionCertificate &c);

/// Census counts; wall time goes to a separate "metadata" object.
Json census_to_json(const ClassCensus &c);
/// One row per profile: profile,tuple_count,class_count.
std::string census_to_csv(const ClassCensus &c);

/// {"task_hash": hex, "cursor": n, "partial": census with class sets}
Json to_json(const Checkpoint &c);
Checkpoint checkpoint_from_json(const Json &j);

/// RFC 4180 field quoting.
std::string csv_field(const std::string &s);

Json read_json_file(const std::string &path);
/// Writes through a temporary file and a rename.
void write_text_file(const std::string &path, const std::string &text);

} // namespace oddcover

#endif

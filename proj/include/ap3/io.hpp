#pragma once

// Text documents: set documents {"modulus": N | null, "elements": [...]},
// JSON forms of results, the persisted ledger and CSV exports.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ap3/analysis.hpp"
#include "ap3/bounds.hpp"
#include "ap3/count.hpp"
#include "ap3/search.hpp"

namespace ap3 {

using Json = nlohmann::ordered_json;

/// Malformed document or out-of-range content.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

AnySet parse_set_document(const std::string& text);
AnySet set_from_json(const Json& doc);
Json set_to_json(const AnySet& set);
Json set_to_json(const ResidueSet& set);
Json set_to_json(const IntegerSet& set);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json to_json(const CountReport& r);
Json to_json(const CanonicalForm& c);
Json to_json(const AffineMap& m);
Json to_json(const FamilyTag& t);
Json to_json(const ExtremalResult& r);
Json to_json(const ClassificationResult& r);
Json to_json(const WrapConstruction& w);
Json to_json(const RectificationResult& r);
Json to_json(const ConditionReport& r);
Json to_json(const BoundRecord& r);
Json to_json(const CutoffCertificate& c);

std::string to_string(Side s);
Side parse_side_name(const std::string& text);

Json ledger_to_json(const Ledger& ledger);
/// Replays every record through Ledger::insert, so a document that breaks
/// the ledger invariants is rejected with InputError.
Ledger ledger_from_json(const Json& doc);

/// target,alpha,side,value,provenance
std::string ledger_csv(const Ledger& ledger);
/// n,M3,half_n2_match,all_EF_witnesses
std::string threshold_csv(const ThresholdScan& scan);

/// Quotes a CSV field when it contains a comma or quote.
std::string csv_field(const std::string& s);

}  // namespace ap3

#include "ap3/io.hpp"

#include <fstream>
#include <sstream>

namespace ap3 {

AnySet set_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("set document must be an object");
  if (!doc.contains("modulus")) throw InputError("set document lacks \"modulus\"");
  if (!doc.contains("elements") || !doc["elements"].is_array())
    throw InputError("set document lacks an \"elements\" array");
  std::vector<std::int64_t> elements;
  for (const auto& e : doc["elements"]) {
    if (!e.is_number_integer()) throw InputError("set elements must be integers");
    elements.push_back(e.get<std::int64_t>());
  }
  const auto& m = doc["modulus"];
  try {
    if (m.is_null()) return IntegerSet(std::move(elements));
    if (!m.is_number_integer() || m.get<std::int64_t>() < 1) throw InputError("modulus must be a positive integer or null");
    return ResidueSet(m.get<std::int64_t>(), std::move(elements));
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

AnySet parse_set_document(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed set document: ") + e.what());
  }
  return set_from_json(doc);
}

Json set_to_json(const ResidueSet& set) {
  Json doc;
  doc["modulus"] = set.modulus();
  doc["elements"] = std::vector<std::int64_t>(set.elements().begin(), set.elements().end());
  return doc;
}

Json set_to_json(const IntegerSet& set) {
  Json doc;
  doc["modulus"] = nullptr;
  doc["elements"] = std::vector<std::int64_t>(set.elements().begin(), set.elements().end());
  return doc;
}

Json set_to_json(const AnySet& set) {
  return std::visit([](const auto& s) { return set_to_json(s); }, set);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

// ---------------------------------------------------------------------------

Json to_json(const CountReport& r) {
  return Json{{"t3", r.t3}, {"trivial", r.trivial}, {"combinatorial", r.combinatorial}};
}

Json to_json(const AffineMap& m) {
  Json j{{"scale", m.scale()}, {"shift", m.shift()}};
  j["modulus"] = m.modulus() ? Json(*m.modulus()) : Json(nullptr);
  return j;
}

Json to_json(const CanonicalForm& c) {
  Json j;
  j["representative"] = set_to_json(c.representative);
  j["encoding"] = c.encoding;
  j["stabilizer"] = c.stabilizer;
  return j;
}

Json to_json(const FamilyTag& t) {
  return Json{{"family", t.family == Family::E ? "E" : "F"}, {"k", t.k}, {"m", t.m}, {"name", t.to_string()}};
}

std::string to_string(Side s) { return s == Side::max ? "max" : "min"; }

Side parse_side_name(const std::string& text) {
  if (text == "max") return Side::max;
  if (text == "min") return Side::min;
  throw InputError("side must be max or min, got '" + text + "'");
}

Json to_json(const ExtremalResult& r) {
  Json j;
  j["n"] = r.n;
  j["modulus"] = r.modulus ? Json(*r.modulus) : Json(nullptr);
  j["side"] = to_string(r.side);
  if (r.width_cap) j["width_cap"] = *r.width_cap;
  j["value"] = r.value;
  j["witness_count"] = r.witnesses.size();
  Json w = Json::array();
  for (const auto& c : r.witnesses) w.push_back(to_json(c));
  j["witnesses"] = std::move(w);
  j["search_space_size"] = r.search_space_size;
  j["pruned_count"] = r.pruned_count;
  j["nodes"] = r.nodes;
  return j;
}

Json to_json(const ClassificationResult& r) {
  Json j;
  j["matched"] = r.matched;
  j["tag"] = r.tag ? to_json(*r.tag) : Json(nullptr);
  j["map"] = r.map ? to_json(*r.map) : Json(nullptr);
  Json all = Json::array();
  for (const auto& t : r.all_tags) all.push_back(t.to_string());
  j["all_tags"] = std::move(all);
  return j;
}

Json to_json(const WrapConstruction& w) {
  Json j;
  j["tag"] = to_json(w.tag);
  j["modulus"] = w.set.modulus();
  j["size"] = w.set.size();
  j["t3"] = w.t3;
  j["density"] = w.density;
  j["normalized_t3"] = static_cast<double>(w.t3) / (static_cast<double>(w.set.modulus()) * w.set.modulus());
  return j;
}

Json to_json(const RectificationResult& r) {
  return Json{{"dilator", r.dilator},
              {"offset", r.offset},
              {"arc_length", r.arc_length},
              {"covered", r.covered},
              {"covered_fraction", to_string(r.covered_fraction)}};
}

Json to_json(const ConditionReport& r) {
  Json j;
  Json large = Json::array(), structured = Json::array();
  for (const auto& x : r.largeness) large.push_back(to_string(x));
  for (const auto& x : r.structured) structured.push_back(to_string(x));
  j["largeness"] = std::move(large);
  j["structured"] = std::move(structured);
  j["cross_energy"] = r.cross_energy;
  j["cross_normalized"] = r.cross_normalized;
  j["cross_ok"] = r.cross_ok;
  j["noise_energy"] = r.noise_energy;
  j["noise_normalized"] = r.noise_normalized;
  j["noise_ok"] = r.noise_ok;
  return j;
}

Json to_json(const BoundRecord& r) {
  Json j;
  j["target"] = to_string(r.target);
  j["alpha"] = to_string(r.alpha);
  j["side"] = to_string(r.side);
  j["value"] = to_string(r.value);
  j["provenance"] = Json{{"kind", [&] {
                            const std::string s = r.provenance.to_string();
                            return s.substr(0, s.find('('));
                          }()},
                         {"detail", r.provenance.detail},
                         {"parents", r.provenance.parents}};
  j["finite_n"] = r.finite_n;
  j["modulus"] = r.modulus ? Json(*r.modulus) : Json(nullptr);
  return j;
}

namespace {

Json probe_json(const EqualSplitProbe& p) {
  return Json{{"t", to_string(p.t)},
              {"alpha", to_string(p.alpha)},
              {"product", to_decimal(p.product, 12)},
              {"single_family", to_decimal(p.single_family, 12)},
              {"dominates", p.dominates}};
}

Json split_json(const SplitComparison& s) {
  return Json{{"alpha", to_string(s.alpha)},
              {"single_family", to_decimal(s.single_family, 12)},
              {"best_product", s.best_product ? Json(to_decimal(*s.best_product, 12)) : Json(nullptr)},
              {"best_split", s.best_split ? Json(to_string(*s.best_split)) : Json(nullptr)},
              {"dominates", s.dominates}};
}

BoundRecord record_from_json(const Json& j) {
  BoundRecord r;
  r.target = parse_target(j.at("target").get<std::string>());
  r.alpha = parse_rational(j.at("alpha").get<std::string>());
  r.side = parse_side(j.at("side").get<std::string>());
  r.value = parse_rational(j.at("value").get<std::string>());
  const auto& p = j.at("provenance");
  r.provenance.kind = parse_provenance_kind(p.at("kind").get<std::string>());
  r.provenance.detail = p.value("detail", "");
  r.provenance.parents = p.value("parents", std::vector<std::size_t>{});
  r.finite_n = j.value("finite_n", false);
  if (j.contains("modulus") && !j["modulus"].is_null()) r.modulus = j["modulus"].get<std::int64_t>();
  return r;
}

}  // namespace

Json to_json(const CutoffCertificate& c) {
  Json j;
  j["cutoff"] = c.decimal;
  j["closed_form"] = "2(7+2*sqrt(6))/75";
  j["enclosure"] = Json{{"lo", to_decimal(c.lo, 20)}, {"hi", to_decimal(c.hi, 20)}};
  j["sqrt6_enclosure"] = Json{{"lo", to_string(c.sqrt6_lo)}, {"hi", to_string(c.sqrt6_hi)}};
  j["below"] = probe_json(c.below);
  j["above"] = probe_json(c.above);
  j["alpha_0.31"] = split_json(c.at_031);
  j["alpha_0.33"] = split_json(c.at_033);
  j["matches_reported_value"] = c.matches_reported_value;
  return j;
}

// ---------------------------------------------------------------------------

Json ledger_to_json(const Ledger& ledger) {
  Json j;
  j["grid"] = Json{{"max_denominator", ledger.grid_options().max_denominator},
                   {"max_depth", ledger.grid_options().max_depth}};
  Json records = Json::array(), observations = Json::array();
  for (const auto& r : ledger.records()) records.push_back(to_json(r));
  for (const auto& r : ledger.observations()) observations.push_back(to_json(r));
  j["records"] = std::move(records);
  j["observations"] = std::move(observations);
  return j;
}

Ledger ledger_from_json(const Json& doc) {
  try {
    GridOptions grid;
    if (doc.contains("grid")) {
      grid.max_denominator = doc["grid"].value("max_denominator", grid.max_denominator);
      grid.max_depth = doc["grid"].value("max_depth", grid.max_depth);
    }
    Ledger ledger(grid);
    for (const auto& r : doc.at("records")) ledger.insert(record_from_json(r), true);
    if (doc.contains("observations"))
      for (const auto& r : doc["observations"]) {
        BoundRecord rec = record_from_json(r);
        rec.finite_n = true;
        ledger.insert(rec, false);
      }
    return ledger;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("corrupt ledger document: ") + e.what());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string ledger_csv(const Ledger& ledger) {
  std::string out = "target,alpha,side,value,provenance\n";
  for (const auto& r : ledger.records()) {
    out += to_string(r.target) + "," + to_string(r.alpha) + "," + to_string(r.side) + "," + to_string(r.value) + "," +
           csv_field(r.provenance.to_string()) + "\n";
  }
  return out;
}

std::string threshold_csv(const ThresholdScan& scan) {
  std::string out = "n,M3,half_n2_match,all_EF_witnesses\n";
  for (const auto& row : scan.rows) {
    out += std::to_string(row.n) + "," + std::to_string(row.m3) + "," + (row.half_n2_match ? "true" : "false") + "," +
           (row.all_ef_witnesses ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace ap3

#include <CLI11.hpp>
#include <iostream>
#include <iterator>
#include <set>

#include "ap3/analysis.hpp"
#include "ap3/bounds.hpp"
#include "ap3/construct.hpp"
#include "ap3/count.hpp"
#include "ap3/io.hpp"
#include "ap3/search.hpp"
#include "suites.hpp"

using namespace ap3;

namespace {

enum Exit { ok = 0, check_failed = 1, input_error = 2, budget_exceeded = 3 };

struct Global {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t budget_nodes = 50'000'000;
  std::string format = "auto";
  std::string out;
};

// A command's result: JSON fields, and optionally a CSV body.
struct Output {
  std::string command;
  Json config = Json::object();
  Json result = Json::object();
  std::string csv;
  bool prefer_csv = false;
  int status = ok;
};

SearchOptions search_options(const Global& g) {
  SearchOptions s;
  s.threads = g.threads;
  s.budget_nodes = g.budget_nodes;
  return s;
}

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  return read_text_file(path);
}

AnySet load_set(const std::string& path) { return parse_set_document(read_input(path)); }

ResidueSet load_residues(const std::string& path) {
  auto s = load_set(path);
  if (!std::holds_alternative<ResidueSet>(s)) throw InputError(path + ": expected a modular set (modulus not null)");
  return std::get<ResidueSet>(std::move(s));
}

Rational rational_arg(const std::string& text, const std::string& what) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw InputError(what + ": not a rational number: '" + text + "'");
  }
}

FamilyTag family_arg(const std::string& family, std::int64_t k, std::int64_t m) {
  if (family != "E" && family != "F") throw InputError("--family must be E or F");
  return {family == "E" ? Family::E : Family::F, k, m};
}

// Threads never change results, so the header leaves them out.
Json header(const Global& g, const Output& o) {
  Json h;
  h["command"] = o.command;
  h["seed"] = g.seed;
  h["budget_nodes"] = g.budget_nodes;
  h["config"] = o.config;
  return h;
}

int emit(const Global& g, const Output& o) {
  const bool csv = g.format == "csv" || (g.format == "auto" && o.prefer_csv);
  std::string text;
  if (csv) {
    if (o.csv.empty()) throw InputError("'" + o.command + "' has no CSV form");
    text = "# " + header(g, o).dump() + "\n" + o.csv;
  } else {
    Json doc;
    doc["run"] = header(g, o);
    for (const auto& [k, v] : o.result.items()) doc[k] = v;
    text = doc.dump(2) + "\n";
  }
  if (g.out.empty())
    std::cout << text;
  else
    write_text_file(g.out, text);
  return o.status;
}

Json set_fields(const AnySet& s, Json extra = Json::object()) {
  Json j = set_to_json(s);
  for (const auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

Json wrap_fields(const WrapConstruction& w) {
  Json j = to_json(w);
  j.erase("modulus");
  j.erase("size");
  return set_fields(w.set, j);
}

std::string suite_csv(const std::vector<cli::SuiteRow>& rows) {
  std::string out = "case,lhs,rhs,holds\n";
  for (const auto& r : rows)
    out += csv_field(r.id) + "," + r.lhs + "," + r.rhs + "," + (r.holds ? "true" : "false") + "\n";
  return out;
}

Ledger load_ledger(const std::string& path) {
  Json doc;
  try {
    doc = Json::parse(read_text_file(path));
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": corrupt ledger document: " + e.what());
  }
  return ledger_from_json(doc);
}

void save_ledger(const std::string& path, const Ledger& l) { write_text_file(path, ledger_to_json(l).dump(2) + "\n"); }

Json highlights(const Ledger& l) {
  Json j = Json::object();
  for (const auto& [name, t, a, upper] :
       std::vector<std::tuple<std::string, Target, Rational, bool>>{{"m3(1/2) <=", Target::m3, make_rational(1, 2), true},
                                                                   {"M3(1/2) >=", Target::M3, make_rational(1, 2), false},
                                                                   {"m3(1/4) <=", Target::m3, make_rational(1, 4), true},
                                                                   {"M3(1/4) >=", Target::M3, make_rational(1, 4), false}}) {
    const auto v = upper ? l.best_upper(t, a) : l.best_lower(t, a);
    j[name] = v ? Json(to_string(*v)) : Json(nullptr);
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ap3: exact counts, constructions and extremal searches for three-term progressions"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads, 0 for all cores")->capture_default_str();
  app.add_option("--budget-nodes", g.budget_nodes, "Search node budget")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "json, csv or auto")->check(CLI::IsMember({"auto", "json", "csv"}))->capture_default_str();
  app.add_option("--out", g.out, "Write the document here instead of stdout");

  Output o;
  std::function<void()> action;

  // count
  std::string count_file;
  auto* count = app.add_subcommand("count", "T3 of a set document (path or -)");
  count->add_option("file", count_file)->required();
  count->callback([&] {
    action = [&] {
      o.command = "count";
      o.config["file"] = count_file;
      const auto s = load_set(count_file);
      const CountReport r = std::holds_alternative<ResidueSet>(s) ? count_report(std::get<ResidueSet>(s))
                                                                  : t3_integers(std::get<IntegerSet>(s));
      o.result = to_json(r);
    };
  });

  // search
  std::int64_t search_n = 0, search_mod = 0, width_cap = 0;
  bool integers = false;
  std::string side_name = "max";
  auto* search = app.add_subcommand("search", "Exhaustive M3 or m3");
  search->add_option("--n", search_n, "Set size")->required();
  search->add_option("--N", search_mod, "Prime modulus");
  search->add_flag("--integers", integers, "Search over the integers");
  search->add_option("--side", side_name, "max or min")->capture_default_str();
  search->add_option("--width-cap", width_cap, "Integer search width (default 2n)");
  search->add_flag("--via-complement", "Use the complement identity");
  search->callback([&] {
    action = [&] {
      o.command = "search";
      const Side side = parse_side_name(side_name);
      o.config = Json{{"n", search_n}, {"side", side_name}};
      if (integers == (search_mod != 0)) throw InputError("give exactly one of --N and --integers");
      ExtremalResult r;
      if (integers) {
        if (side != Side::max) throw InputError("integer search only supports --side max");
        const std::int64_t w = width_cap ? width_cap : default_width_cap(search_n);
        o.config["integers"] = true;
        o.config["width_cap"] = w;
        r = max3ap_integers(search_n, w, search_options(g));
      } else {
        const bool complement = search->count("--via-complement") > 0;
        o.config["N"] = search_mod;
        o.config["via_complement"] = complement;
        r = complement ? extremal_mod_via_complement(search_n, search_mod, side, search_options(g))
                       : extremal_mod(search_n, search_mod, side, search_options(g));
      }
      o.result = to_json(r);
      // Family tags reached by the witnesses; dilates share a witness.
      std::vector<std::string> tags;
      for (const auto& w : r.witnesses) {
        const auto c = std::visit([](const auto& s) { return classify_extremal(s); }, w.representative);
        for (const auto& t : c.all_tags) tags.push_back(t.to_string());
      }
      o.result["witness_family_tags"] = tags;
    };
  });

  // verify
  std::string suite;
  cli::SuiteParams sp;
  auto* verify = app.add_subcommand("verify", "Run a property suite; exit 1 on any failure");
  verify->add_option("suite", suite, "One of the suite names")->required();
  verify->add_option("--N", sp.modulus, "Modulus (or largest modulus) for the suite");
  verify->add_option("--n-max", sp.n_max, "Largest n for extremal-int")->capture_default_str();
  verify->add_option("--cases", sp.cases, "Randomized cases")->capture_default_str();
  verify->callback([&] {
    action = [&] {
      o.command = "verify " + suite;
      sp.seed = g.seed;
      sp.search = search_options(g);
      o.config = Json{{"suite", suite}, {"N", sp.modulus}, {"n_max", sp.n_max}, {"cases", sp.cases}};
      const auto rows = cli::run_suite(suite, sp);
      std::size_t failures = 0;
      Json jr = Json::array();
      for (const auto& r : rows) {
        failures += !r.holds;
        jr.push_back(Json{{"case", r.id}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}});
      }
      o.result = Json{{"suite", suite}, {"cases", rows.size()}, {"failures", failures}, {"pass", failures == 0}};
      o.result["rows"] = std::move(jr);
      o.csv = suite_csv(rows);
      o.prefer_csv = true;
      o.status = failures == 0 ? ok : check_failed;
      std::cerr << suite << ": " << rows.size() << " cases, " << failures << " failures\n";
    };
  });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Bound ledger for m3(alpha) and M3(alpha)");
  bounds->require_subcommand(1);
  std::string ledger_path;
  std::vector<std::string> curve_alphas;
  GridOptions grid;
  std::size_t max_iter = 64;
  std::string add_file, add_target = "m3", add_id = "cli";
  bool admit_finite = false;
  int digits = 15;

  auto* build = bounds->add_subcommand("build", "Write a seeded ledger");
  build->add_option("--ledger", ledger_path)->required();
  build->add_option("--curve-alpha", curve_alphas, "Curve points (default 1/3 1/2 2/3)");
  build->add_option("--max-denominator", grid.max_denominator)->capture_default_str();
  build->add_option("--max-depth", grid.max_depth)->capture_default_str();
  build->callback([&] {
    action = [&] {
      o.command = "bounds build";
      std::vector<Rational> alphas;
      for (const auto& a : curve_alphas) alphas.push_back(rational_arg(a, "--curve-alpha"));
      o.config = Json{{"ledger", ledger_path}, {"curve_alpha", curve_alphas}, {"max_denominator", grid.max_denominator},
                      {"max_depth", grid.max_depth}};
      Ledger l;
      try {
        l = seed_ledger(alphas, grid);
      } catch (const std::domain_error& e) {
        throw InputError(e.what());
      }
      save_ledger(ledger_path, l);
      o.result = Json{{"records", l.records().size()}, {"best", highlights(l)}};
    };
  });

  auto* closure = bounds->add_subcommand("closure", "Close the ledger under complements and products");
  closure->add_option("--ledger", ledger_path)->required();
  closure->add_option("--max-iter", max_iter)->capture_default_str();
  closure->callback([&] {
    action = [&] {
      o.command = "bounds closure";
      o.config = Json{{"ledger", ledger_path}, {"max_iter", max_iter}};
      Ledger l = load_ledger(ledger_path);
      const auto stats = submultiplicative_closure(l, max_iter);
      save_ledger(ledger_path, l);
      o.result = Json{{"iterations", stats.iterations}, {"added", stats.added}, {"records", l.records().size()},
                      {"best", highlights(l)}};
    };
  });

  auto* add = bounds->add_subcommand("add", "Record a construction bound from a set document");
  add->add_option("--ledger", ledger_path)->required();
  add->add_option("--set", add_file)->required();
  add->add_option("--target", add_target, "m3 or M3")->capture_default_str();
  add->add_option("--id", add_id)->capture_default_str();
  add->add_flag("--admit-finite", admit_finite, "Let the finite-N record enter the closure");
  add->callback([&] {
    action = [&] {
      o.command = "bounds add";
      o.config = Json{{"ledger", ledger_path}, {"set", add_file}, {"target", add_target}, {"id", add_id},
                      {"admit_finite", admit_finite}};
      Target t;
      try {
        t = parse_target(add_target);
      } catch (const std::exception& e) {
        throw InputError(e.what());
      }
      Ledger l = load_ledger(ledger_path);
      const auto rec = construction_bound(load_residues(add_file), t, add_id);
      try {
        l.insert(rec, admit_finite);
      } catch (const LedgerInconsistent& e) {
        throw InputError(std::string("record contradicts the ledger: ") + e.what());
      }
      save_ledger(ledger_path, l);
      o.result = Json{{"record", to_json(rec)}, {"admitted", admit_finite}};
    };
  });

  auto* exp = bounds->add_subcommand("export", "Print the ledger (CSV by default)");
  exp->add_option("--ledger", ledger_path)->required();
  exp->callback([&] {
    action = [&] {
      o.command = "bounds export";
      o.config = Json{{"ledger", ledger_path}};
      const Ledger l = load_ledger(ledger_path);
      o.result = ledger_to_json(l);
      o.csv = ledger_csv(l);
      o.prefer_csv = true;
    };
  });

  auto* cut = bounds->add_subcommand("cutoff", "The density 2(7+2 sqrt 6)/75 with its certificate");
  cut->add_option("--digits", digits)->capture_default_str()->check(CLI::Range(12, 40));
  cut->callback([&] {
    action = [&] {
      o.command = "bounds cutoff";
      o.config = Json{{"digits", digits}};
      o.result = to_json(ef_sharpness_cutoff(digits));
    };
  });

  // construct
  auto* construct = app.add_subcommand("construct", "Explicit set families");
  construct->require_subcommand(1);
  std::string family = "E", file_a, file_b;
  std::int64_t k = 0, m = 0, mod = 0, size = 0, shift = 0, trials = 64, radius = -1, base = 2;
  int dim = 1;
  double tolerance = 0.05;
  bool complement = false;

  auto* fam = construct->add_subcommand("family", "E(k,m) or F(k,m) in the integers");
  fam->add_option("--family", family)->capture_default_str();
  fam->add_option("--k", k)->required();
  fam->add_option("--m", m)->required();
  fam->callback([&] {
    action = [&] {
      o.command = "construct family";
      const auto tag = family_arg(family, k, m);
      o.config = Json{{"generator", "family"}, {"family", family}, {"k", k}, {"m", m}};
      const auto s = generate_family(tag);
      o.result = set_fields(s, Json{{"tag", tag.to_string()}, {"t3", t3_integers(s).t3}});
    };
  });

  auto* emb = construct->add_subcommand("embed", "A family set reduced mod N");
  emb->add_option("--family", family)->capture_default_str();
  emb->add_option("--k", k)->required();
  emb->add_option("--m", m)->required();
  emb->add_option("--N", mod)->required();
  emb->add_option("--shift", shift)->capture_default_str();
  emb->callback([&] {
    action = [&] {
      o.command = "construct embed";
      const auto tag = family_arg(family, k, m);
      o.config = Json{{"generator", "embed"}, {"family", family}, {"k", k}, {"m", m}, {"N", mod}, {"shift", shift}};
      const auto e = embed_mod(generate_family(tag), mod, shift);
      o.result = set_fields(e.set, Json{{"tag", tag.to_string()}, {"collision", e.collision}, {"t3", t3(e.set)}});
    };
  });

  auto* wrap = construct->add_subcommand("wrap", "Complement of E(k,m) in Z/NZ");
  wrap->add_option("--N", mod)->required();
  wrap->add_option("--k", k)->required();
  wrap->add_option("--m", m)->required();
  wrap->callback([&] {
    action = [&] {
      o.command = "construct wrap";
      o.config = Json{{"generator", "wraparound_complement"}, {"N", mod}, {"k", k}, {"m", m}};
      o.result = wrap_fields(wraparound_complement(mod, k, m));
    };
  });

  auto* opt = construct->add_subcommand("optimize", "Best family set (or complement) of size n in Z/NZ");
  opt->add_option("--N", mod)->required();
  opt->add_option("--n", size)->required();
  opt->add_flag("--complement", complement, "Fewest progressions via complements");
  opt->callback([&] {
    action = [&] {
      o.command = "construct optimize";
      o.config = Json{{"generator", complement ? "optimize_wraparound_complement" : "optimize_wraparound"},
                      {"N", mod},
                      {"n", size}};
      o.result = wrap_fields(complement ? optimize_wraparound_complement(mod, size, g.threads)
                                        : optimize_wraparound(mod, size, g.threads));
    };
  });

  auto* inter = construct->add_subcommand("intersect", "Best intersection of A with lambda*B + mu over seeded trials");
  inter->add_option("--a", file_a)->required();
  inter->add_option("--b", file_b)->required();
  inter->add_option("--trials", trials)->capture_default_str()->check(CLI::PositiveNumber);
  inter->add_option("--tolerance", tolerance)->capture_default_str();
  inter->callback([&] {
    action = [&] {
      o.command = "construct intersect";
      o.config = Json{{"generator", "intersect_search"}, {"a", file_a}, {"b", file_b}, {"trials", trials},
                      {"tolerance", tolerance}};
      IntersectOptions io;
      io.tolerance = tolerance;
      io.threads = g.threads;
      const auto r = intersect_search(load_residues(file_a), load_residues(file_b), static_cast<std::uint64_t>(trials),
                                      g.seed, io);
      Json tr = Json::array();
      std::string csv = "lambda,mu,size,t3,eligible\n";
      for (const auto& t : r.trials) {
        tr.push_back(Json{{"lambda", t.lambda}, {"mu", t.mu}, {"size", t.size}, {"t3", t.t3}, {"eligible", t.eligible}});
        csv += std::to_string(t.lambda) + "," + std::to_string(t.mu) + "," + std::to_string(t.size) + "," +
               std::to_string(t.t3) + "," + (t.eligible ? "true" : "false") + "\n";
      }
      o.csv = csv;
      if (!r.best) {
        o.result = Json{{"best", nullptr}, {"trials", tr}};
        return;
      }
      const auto& b = r.trials[*r.best];
      const double n2 = static_cast<double>(r.best_set->modulus()) * static_cast<double>(r.best_set->modulus());
      o.result = set_fields(*r.best_set, Json{{"lambda", b.lambda},
                                              {"mu", b.mu},
                                              {"t3", b.t3},
                                              {"normalized_t3", static_cast<double>(b.t3) / n2},
                                              {"trials", tr}});
    };
  });

  auto* beh = construct->add_subcommand("behrend", "Digit-sphere set with no nontrivial progression");
  beh->add_option("--dim", dim)->required();
  beh->add_option("--base", base)->required();
  beh->add_option("--radius", radius, "Squared radius (default: the most populous)");
  beh->callback([&] {
    action = [&] {
      o.command = "construct behrend";
      if (dim < 1 || base < 2) throw InputError("behrend needs --dim >= 1 and --base >= 2");
      const std::int64_t r = radius >= 0 ? radius : behrend_most_populous_radius(dim, base);
      o.config = Json{{"generator", "behrend"}, {"dim", dim}, {"base", base}, {"radius", r}};
      const auto s = behrend_set(dim, base, r);
      o.result = set_fields(s, Json{{"combinatorial", t3_integers(s).combinatorial}});
    };
  });

  auto* rnd = construct->add_subcommand("random", "Uniform n-subset of Z/NZ");
  rnd->add_option("--n", size)->required();
  rnd->add_option("--N", mod)->required();
  rnd->callback([&] {
    action = [&] {
      o.command = "construct random";
      o.config = Json{{"generator", "random"}, {"n", size}, {"N", mod}};
      o.result = set_fields(random_set(size, mod, g.seed));
    };
  });

  // scan
  auto* scan = app.add_subcommand("scan", "M3(n,N) for every n, with the family threshold");
  scan->add_option("--N", mod)->required();
  scan->callback([&] {
    action = [&] {
      o.command = "scan";
      o.config = Json{{"N", mod}};
      const auto s = threshold_scan(mod, search_options(g));
      Json rows = Json::array();
      for (const auto& r : s.rows)
        rows.push_back(Json{{"n", r.n}, {"M3", r.m3}, {"half_n2_match", r.half_n2_match},
                            {"all_EF_witnesses", r.all_ef_witnesses}});
      o.result = Json{{"N", mod}, {"threshold_n", s.threshold_n}, {"threshold_ratio", s.threshold_ratio}, {"rows", rows}};
      o.csv = threshold_csv(s);
      o.prefer_csv = true;
    };
  });

  // classify
  std::string classify_file;
  auto* classify = app.add_subcommand("classify", "Match a set against the E/F affine orbits");
  classify->add_option("file", classify_file)->required();
  classify->callback([&] {
    action = [&] {
      o.command = "classify";
      o.config = Json{{"file", classify_file}};
      const auto s = load_set(classify_file);
      o.result = to_json(std::visit([](const auto& x) { return classify_extremal(x); }, s));
    };
  });

  // rectify
  std::string rect_file, coverage = "1";
  auto* rect = app.add_subcommand("rectify", "Shortest arc over all dilates");
  rect->add_option("file", rect_file)->required();
  rect->add_option("--coverage", coverage)->capture_default_str();
  rect->callback([&] {
    action = [&] {
      o.command = "rectify";
      o.config = Json{{"file", rect_file}, {"coverage", coverage}};
      o.result = to_json(rectify(load_residues(rect_file), rational_arg(coverage, "--coverage"), g.threads));
    };
  });

  // decompose
  std::string dec_file, eps = "1/4", eps_prime = "1/4";
  std::int64_t big_l = 2;
  auto* dec = app.add_subcommand("decompose", "Heuristic structured/noise split with the condition report");
  dec->add_option("file", dec_file)->required();
  dec->add_option("--eps", eps)->capture_default_str();
  dec->add_option("--eps-prime", eps_prime)->capture_default_str();
  dec->add_option("--L", big_l)->capture_default_str();
  dec->callback([&] {
    action = [&] {
      o.command = "decompose";
      o.config = Json{{"file", dec_file}, {"eps", eps}, {"eps_prime", eps_prime}, {"L", big_l}};
      DecomposeOptions opts;
      opts.threads = g.threads;
      const auto d = decompose_heuristic(load_residues(dec_file), rational_arg(eps, "--eps"),
                                         rational_arg(eps_prime, "--eps-prime"), big_l, opts);
      Json parts = Json::array();
      for (const auto& p : d.parts) parts.push_back(set_to_json(p));
      o.result = Json{{"parts", parts}, {"noise", set_to_json(d.noise)}, {"conditions", to_json(verify_decomposition(d))}};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return input_error;
  }

  try {
    action();
    return emit(g, o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "ap3: " << e.what() << "\n";
    return budget_exceeded;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ap3: " << e.what() << "\n";
    return input_error;
  } catch (const std::domain_error& e) {
    std::cerr << "ap3: " << e.what() << "\n";
    return input_error;
  } catch (const std::exception& e) {
    std::cerr << "ap3: " << e.what() << "\n";
    return check_failed;
  }
}

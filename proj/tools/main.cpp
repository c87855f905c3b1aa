// chord — a workbench for composition of points on cubic curves and
// surfaces over small finite fields: collinearity extraction, reflection
// word calculus, equivalence saturation, generation closures and the
// blow-up machinery for split surfaces.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "chord/corpus.hpp"
#include "chord/equivalence.hpp"
#include "chord/generation.hpp"
#include "chord/geometry.hpp"
#include "chord/json_io.hpp"
#include "chord/report.hpp"
#include "chord/rng.hpp"
#include "chord/smooth.hpp"
#include "chord/split_surface.hpp"
#include "chord/words.hpp"

namespace {

using namespace chord;

const Field& parse_field(const std::string& spec) {
  auto comma = spec.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--field expects p,e");
  return Field::get(static_cast<uint32_t>(std::stoul(spec.substr(0, comma))),
                    static_cast<uint32_t>(std::stoul(spec.substr(comma + 1))));
}

std::vector<int> parse_indices(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  return out;
}

// Load an abstract cubic either from a form file (collinearity is derived)
// or from a cubic file.
AbstractCubic load_cubic(const std::string& form_path, const std::string& cubic_path) {
  if (!form_path.empty() && !cubic_path.empty())
    throw std::invalid_argument("give either --in or --cubic, not both");
  if (!form_path.empty()) return collinearity(form_from_json(load_json_file(form_path))).cubic;
  if (!cubic_path.empty()) return cubic_from_json(load_json_file(cubic_path));
  throw std::invalid_argument("an input file is required (--in form.json or --cubic cubic.json)");
}

struct CommonOpts {
  std::string out = "-";
  uint64_t seed = 1;
  size_t budget = kDefaultWordBudget;
  bool timings = false;
};

void emit(const std::string& command, const Json& config, const Json& results,
          const CommonOpts& opts) {
  write_report(make_report(command, config, results, opts.timings), opts.out);
}

int cmd_enumerate(const std::string& field_spec, const std::string& mode, uint64_t samples,
                  int filter_points, int filter_lines, bool filter_eckardt, size_t max_report,
                  const CommonOpts& opts) {
  const Field& k = parse_field(field_spec);
  Json config{{"field", field_to_json(k)},    {"mode", mode},
              {"samples", samples},           {"filter_points", filter_points},
              {"filter_lines", filter_lines}, {"filter_eckardt", filter_eckardt},
              {"max_report", max_report},     {"seed", opts.seed}};
  Json matches = Json::array();
  uint64_t smooth_count = 0, seen = 0;
  auto rational_points = enumerate_proj_points(k, 3);

  auto consider = [&](const CubicForm& F) {
    ++smooth_count;
    std::vector<ProjPoint> pts;
    for (const auto& x : rational_points)
      if (eval_form(F, x) == 0) pts.push_back(x);
    if (filter_points >= 0 && static_cast<int>(pts.size()) != filter_points) return;
    int nlines = -1;
    if (filter_lines >= 0) {
      nlines = static_cast<int>(lines_in_form(F).size());
      if (nlines != filter_lines) return;
    }
    if (filter_eckardt) {
      bool all_eck = !pts.empty();
      for (const auto& x : pts) all_eck &= is_eckardt(F, x);
      if (!all_eck) return;
    }
    if (matches.size() >= max_report) return;
    Json m{{"form", form_to_json(F)}, {"points", pts.size()}};
    if (filter_lines >= 0) m["lines"] = nlines;
    if (filter_eckardt) m["all_eckardt"] = true;
    matches.push_back(m);
  };

  if (mode == "exhaustive") {
    if (k.q() > 2)
      throw std::invalid_argument("exhaustive surface enumeration supports F2 only");
    auto table = singular_form_table(k, 3);
    for (uint64_t idx = 1; idx < table.size(); ++idx) {
      ++seen;
      if (table[idx]) continue;
      consider(form_from_index(k, 3, idx));
    }
  } else if (mode == "sampled") {
    if (k.q() > 4) throw std::invalid_argument("sampled enumeration supports q <= 4");
    Rng rng(opts.seed);
    uint64_t total = 1;
    for (int i = 0; i < 20; ++i) total *= k.q();
    // targeted diagonal family first
    for (uint32_t c = 1; c < k.q(); ++c) {
      auto F = diagonal_surface(k, c);
      ++seen;
      if (is_smooth(F)) consider(F);
    }
    for (uint64_t t = 0; t < samples; ++t) {
      uint64_t idx = 1 + rng.below(total - 1);
      auto F = form_from_index(k, 3, idx);
      ++seen;
      if (is_smooth(F)) consider(F);
    }
  } else {
    throw std::invalid_argument("--mode must be exhaustive or sampled");
  }
  Json results{{"forms_seen", seen}, {"smooth", smooth_count}, {"matches", matches}};
  emit("enumerate-surfaces", config, results, opts);
  return 0;
}

int cmd_equiv(const std::string& which, const std::string& form_path,
              const std::string& cubic_path, bool with_trace, const CommonOpts& opts) {
  AbstractCubic P = load_cubic(form_path, cubic_path);
  Json config{{"command", which},
              {"in", form_path.empty() ? cubic_path : form_path},
              {"trace", with_trace}};
  Json results;
  if (which == "uequiv") {
    auto [U, trace] = universal(P);
    results["classes"] = U.class_count();
    results["partition"] = partition_to_json(U);
    results["admissible"] = is_admissible(P, U);
    if (with_trace) results["trace"] = trace_to_json(trace);
  } else {
    Partition R = (which == "u3") ? u3(P) : u2(P);
    results["classes"] = R.class_count();
    results["partition"] = partition_to_json(R);
    results["admissible"] = is_admissible(P, R);
  }
  emit(which, config, results, opts);
  return 0;
}

int cmd_quotient(const std::string& form_path, const std::string& cubic_path,
                 const std::string& by, const CommonOpts& opts) {
  AbstractCubic P = load_cubic(form_path, cubic_path);
  Json config{{"in", form_path.empty() ? cubic_path : form_path}, {"by", by}};
  Partition R;
  if (by == "uequiv")
    R = universal(P).first;
  else if (by == "u3")
    R = u3(P);
  else if (by == "u2")
    R = u2(P);
  else
    throw std::invalid_argument("--by must be uequiv, u3 or u2");
  auto Q = quotient(P, R, false);
  auto ch = ch_axioms_check(Q);
  Json results{{"table", table_to_json(Q)},
               {"ch_axioms_ok", ch.ok},
               {"ch_violations", ch.violations}};
  emit("quotient", config, results, opts);
  return 0;
}

int cmd_word(const std::string& sub, const std::string& form_path,
             const std::string& cubic_path, const std::string& word_s,
             const std::string& word2_s, int letter, const CommonOpts& opts) {
  AbstractCubic P = load_cubic(form_path, cubic_path);
  Word w = parse_indices(word_s);
  Json config{{"sub", sub},
              {"in", form_path.empty() ? cubic_path : form_path},
              {"word", w},
              {"budget", opts.budget}};
  Json results;
  if (sub == "nf") {
    auto nf = normal_form(w, P, opts.budget);
    if (nf.budget_hit) throw BudgetExceeded("normal form exceeded the closure budget");
    results = Json{{"word", word_to_json(nf.word)},
                   {"minimal", nf.minimal},
                   {"closure_size", nf.closure_size}};
  } else if (sub == "eq") {
    Word w2 = parse_indices(word2_s);
    config["word2"] = w2;
    results = Json{{"equal", words_equal(w, w2, P, opts.budget)}};
  } else if (sub == "ord") {
    if (letter < 0) throw std::invalid_argument("--letter is required for word ord");
    config["letter"] = letter;
    results = Json{{"ord", ord(w, P, letter, opts.budget)}};
  } else if (sub == "psi") {
    results = Json{{"support", psi(w).support},
                   {"delta", delta(w, P, opts.budget)},
                   {"delta_tilde", delta_tilde(w, P, opts.budget)}};
  } else {
    throw std::invalid_argument("word subcommand must be nf, eq, ord or psi");
  }
  emit("word " + sub, config, results, opts);
  return 0;
}

int cmd_generate(const std::string& form_path, const std::string& cubic_path,
                 const std::string& rule, const std::string& seed_pts, int max_rounds,
                 size_t max_set, const CommonOpts& opts) {
  AbstractCubic P = load_cubic(form_path, cubic_path);
  auto seed = parse_indices(seed_pts);
  Json config{{"in", form_path.empty() ? cubic_path : form_path},
              {"rule", rule},
              {"seed", seed},
              {"max_rounds", max_rounds},
              {"max_set", max_set}};
  ClosureResult r;
  if (rule == "std") {
    ClosureConfig cfg;
    cfg.rule = GenRule::Standard;
    cfg.max_rounds = max_rounds;
    cfg.max_set = max_set;
    r = closure(P, seed, cfg);
  } else if (rule == "distinct") {
    ClosureConfig cfg;
    cfg.rule = GenRule::DistinctOnly;
    cfg.max_rounds = max_rounds;
    cfg.max_set = max_set;
    r = closure(P, seed, cfg);
  } else if (rule.rfind("a:", 0) == 0) {
    std::string stage = rule.substr(2);
    if (stage == "inf")
      r = closure_rule_a(P, seed, 0, true, max_rounds, max_set);
    else
      r = closure_rule_a(P, seed, std::stoi(stage), false, max_rounds, max_set);
  } else {
    throw std::invalid_argument("--rule must be std, distinct, a:<i> or a:inf");
  }
  if (!r.complete) throw BudgetExceeded("closure hit its caps before the fixpoint");
  emit("generate", config, closure_to_json(r), opts);
  return 0;
}

int cmd_collinearity(const std::string& form_path, const CommonOpts& opts) {
  auto F = form_from_json(load_json_file(form_path));
  Json config{{"in", form_path}};
  auto col = collinearity(F);
  Json results{{"cubic", cubic_to_json(col.cubic)},
               {"smooth", is_smooth(F)},
               {"valid_lenient", col.cubic.validate(false).ok},
               {"valid_strict", col.cubic.validate(true).ok}};
  emit("collinearity", config, results, opts);
  return 0;
}

int cmd_split_build(const std::string& field_spec, const std::string& base_path,
                    const CommonOpts& opts) {
  const Field& k = parse_field(field_spec);
  BaseConfig cfg;
  if (!base_path.empty()) {
    Json j = load_json_file(base_path);
    cfg.f = &field_from_json(j.at("field"));
    auto pts = j.at("base");
    if (pts.size() != 6) throw std::invalid_argument("base config needs 6 points");
    for (int i = 0; i < 6; ++i) cfg.base[i] = point_from_json(*cfg.f, 2, pts[i]);
  } else {
    auto found = find_general_position(k);
    if (!found) throw std::invalid_argument("no general-position 6-tuple over this field");
    cfg = *found;
  }
  Json jbase = Json::array();
  for (const auto& b : cfg.base) jbase.push_back(point_to_json(b));
  Json config{{"field", field_to_json(k)}, {"base", jbase}};
  auto S = SplitSurface::build(cfg);
  Json exc = Json::array();
  for (const auto& e : S.exceptional_lines())
    exc.push_back(Json{{"a", point_to_json(e.a)}, {"b", point_to_json(e.b)}});
  Json results{{"surface", form_to_json(S.surface())},
               {"points", S.points().size()},
               {"interior", S.interior().size()},
               {"exceptional_lines", exc},
               {"lines", lines_in_form(S.surface()).size()}};
  emit("split build", config, results, opts);
  return 0;
}

int cmd_split_check(const std::string& field_spec, const std::string& theorem,
                    uint64_t samples, const CommonOpts& opts) {
  const Field& k = parse_field(field_spec);
  auto found = find_general_position(k);
  if (!found) throw std::invalid_argument("no general-position 6-tuple over this field");
  auto S = SplitSurface::build(*found);
  Json config{{"field", field_to_json(k)},
              {"theorem", theorem},
              {"samples", samples},
              {"seed", opts.seed}};
  Json results;
  if (theorem == "5.3") {
    Json sweeps = Json::array();
    bool all = true;
    for (const auto& x : S.interior()) {
      auto rep = theorem_53_check(S, x);
      all &= rep.covered;
      sweeps.push_back(Json{{"x", point_to_json(x)},
                            {"covered", rep.covered},
                            {"rounds", rep.rounds},
                            {"first_sweep_missed", rep.first_sweep_missed.size()}});
    }
    results = Json{{"all_covered", all}, {"sweeps", sweeps}};
  } else if (theorem == "5.2") {
    // canonical seed search: growing prefixes of the interior points
    Json tried = Json::array();
    bool found_seed = false;
    for (size_t size = 2; size <= 6 && !found_seed; ++size) {
      std::vector<ProjPoint> seed(S.interior().begin(),
                                  S.interior().begin() + static_cast<long>(size));
      auto r = theorem_52_closure(S, seed);
      tried.push_back(Json{{"seed_size", size},
                           {"reached", r.reached.size()},
                           {"generated_all", r.generated_all}});
      found_seed = r.generated_all;
    }
    results = Json{{"generated", found_seed}, {"attempts", tried}};
  } else if (theorem == "5.4") {
    results = Json{{"u3_trivial", corollary_54_check(S)}};
  } else if (theorem == "5.7.6" || theorem == "5.7.7") {
    Rng rng(opts.seed);
    auto planes = enumerate_planes(k);
    uint64_t evaluated = 0, held = 0, skipped = 0;
    while (evaluated < samples) {
      const Plane& T = planes[rng.below(planes.size())];
      CheckOutcome out;
      if (theorem == "5.7.7") {
        int i = static_cast<int>(rng.below(6)), j = static_cast<int>(rng.below(6));
        if (i == j) continue;
        out = claim_577_check(S, i, j, T);
      } else {
        std::vector<ProjPoint> cpts;
        for (const auto& w : S.interior())
          if (T.contains(w)) cpts.push_back(w);
        if (cpts.size() < 4) continue;
        auto pick = [&] { return cpts[rng.below(cpts.size())]; };
        ProjPoint x = pick(), y = pick(), u = pick(), w = pick();
        if (x == y || u == w) continue;
        out = claim_576_check(S, T, x, y, u, w);
      }
      if (!out.evaluated) {
        ++skipped;
        continue;
      }
      ++evaluated;
      held += out.holds ? 1 : 0;
    }
    results = Json{{"evaluated", evaluated}, {"held", held}, {"skipped", skipped}};
  } else {
    throw std::invalid_argument("--theorem must be 5.3, 5.2, 5.4, 5.7.6 or 5.7.7");
  }
  emit("split check " + theorem, config, results, opts);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"composition-of-points workbench for cubic surfaces over small finite fields"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  CommonOpts opts;
  app.add_option("--out", opts.out, "report path ('-' = stdout)")->capture_default_str();
  app.add_option("--seed", opts.seed, "rng seed for sampled checks")->capture_default_str();
  app.add_option("--budget", opts.budget, "word closure budget")->capture_default_str();
  app.add_flag("--timings", opts.timings, "include wall-clock timings in the report");

  std::string field_spec = "2,1", mode = "exhaustive", form_path, cubic_path;
  uint64_t samples = 1000;
  int filter_points = -1, filter_lines = -1;
  bool filter_eckardt = false;
  size_t max_report = 16;

  auto* enumerate = app.add_subcommand("enumerate-surfaces", "scan smooth cubic surfaces");
  enumerate->add_option("--field", field_spec, "p,e");
  enumerate->add_option("--mode", mode, "exhaustive|sampled");
  enumerate->add_option("--samples", samples, "sample count for sampled mode");
  enumerate->add_option("--filter-points", filter_points, "exact rational point count");
  enumerate->add_option("--filter-lines", filter_lines, "exact rational line count");
  enumerate->add_flag("--filter-eckardt", filter_eckardt, "all rational points Eckardt");
  enumerate->add_option("--max-report", max_report, "cap on reported forms");

  auto* coll = app.add_subcommand("collinearity", "derive the abstract cubic of a form");
  coll->add_option("--in", form_path, "form JSON file")->required();

  std::string by = "uequiv";
  auto* uequiv = app.add_subcommand("uequiv", "universal equivalence");
  auto* u3c = app.add_subcommand("u3", "3-component of the universal equivalence");
  auto* u2c = app.add_subcommand("u2", "2-component of the universal equivalence");
  bool with_trace = false;
  for (auto* c : {uequiv, u3c, u2c}) {
    c->add_option("--in", form_path, "form JSON file");
    c->add_option("--cubic", cubic_path, "abstract cubic JSON file");
    c->add_flag("--trace", with_trace, "include the saturation trace");
  }
  auto* quot = app.add_subcommand("quotient", "quotient quasigroup table");
  quot->add_option("--in", form_path, "form JSON file");
  quot->add_option("--cubic", cubic_path, "abstract cubic JSON file");
  quot->add_option("--by", by, "uequiv|u3|u2");

  std::string word_sub = "nf", word_s, word2_s;
  int letter = -1;
  auto* word = app.add_subcommand("word", "reflection word calculus");
  word->add_option("sub", word_sub, "nf|eq|ord|psi")->required();
  word->add_option("--in", form_path, "form JSON file");
  word->add_option("--cubic", cubic_path, "abstract cubic JSON file");
  word->add_option("--word", word_s, "comma-separated letters")->required();
  word->add_option("--word2", word2_s, "second word for eq");
  word->add_option("--letter", letter, "letter for ord");

  std::string rule = "std", seed_pts;
  int max_rounds = 1000;
  size_t max_set = 1u << 20;
  auto* gen = app.add_subcommand("generate", "generation closures");
  gen->add_option("--in", form_path, "form JSON file");
  gen->add_option("--cubic", cubic_path, "abstract cubic JSON file");
  gen->add_option("--rule", rule, "std|distinct|a:<i>|a:inf");
  gen->add_option("--seed-points", seed_pts, "comma-separated point indices")->required();
  gen->add_option("--max-rounds", max_rounds, "round cap");
  gen->add_option("--max-set", max_set, "reached-set cap");

  auto* split = app.add_subcommand("split", "split-surface machinery");
  split->require_subcommand(1);
  std::string base_path, theorem = "5.3";
  auto* build = split->add_subcommand("build", "build the blow-up surface");
  build->add_option("--field", field_spec, "p,e");
  build->add_option("--base", base_path, "JSON file with 6 base points");
  auto* check = split->add_subcommand("check", "run a theorem check");
  check->add_option("--field", field_spec, "p,e");
  check->add_option("--theorem", theorem, "5.3|5.2|5.4|5.7.6|5.7.7");
  check->add_option("--samples", samples, "sample count for claim checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (enumerate->parsed())
      return cmd_enumerate(field_spec, mode, samples, filter_points, filter_lines,
                           filter_eckardt, max_report, opts);
    if (coll->parsed()) return cmd_collinearity(form_path, opts);
    if (uequiv->parsed()) return cmd_equiv("uequiv", form_path, cubic_path, with_trace, opts);
    if (u3c->parsed()) return cmd_equiv("u3", form_path, cubic_path, with_trace, opts);
    if (u2c->parsed()) return cmd_equiv("u2", form_path, cubic_path, with_trace, opts);
    if (quot->parsed()) return cmd_quotient(form_path, cubic_path, by, opts);
    if (word->parsed())
      return cmd_word(word_sub, form_path, cubic_path, word_s, word2_s, letter, opts);
    if (gen->parsed())
      return cmd_generate(form_path, cubic_path, rule, seed_pts, max_rounds, max_set, opts);
    if (split->parsed()) {
      if (build->parsed()) return cmd_split_build(field_spec, base_path, opts);
      if (check->parsed()) return cmd_split_check(field_spec, theorem, samples, opts);
    }
  } catch (const chord::BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

#pragma once

// Command-line front end.  `run` takes the arguments after the program name
// and writes the report to `out` (or --output) and errors to `err`, so tests
// can drive it in-process.
//
// Exit codes: 0 ok, 1 input error, 2 falsified invariant, 3 budget exceeded.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "cone_geometry.hpp"
#include "cyclic_semigroup.hpp"
#include "elliptic.hpp"
#include "error.hpp"
#include "finite_dynamics.hpp"
#include "json_io.hpp"
#include "matrix_dynamics.hpp"
#include "shift_construction.hpp"
#include "verify.hpp"

namespace algdyn::cli {

  using json = nlohmann::json;

  inline constexpr char const* version = "1.0.0";

  enum ExitCode : int { ok = 0, input_error = 1, falsified = 2, budget_exceeded = 3 };

  inline json module_versions() {
    return {{"algdyn", version},          {"cyclic_semigroup", "1.0.0"},
            {"matrix_dynamics", "1.0.0"}, {"cone_geometry", "1.0.0"},
            {"finite_dynamics", "1.0.0"}, {"shift_construction", "1.0.0"},
            {"elliptic", "1.0.0"},        {"cli", "1.0.0"}};
  }

  inline std::string sha256_hex(std::string const& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int  len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
  }

  struct RunConfig {
    std::string                subcommand;
    std::string                verb;
    std::optional<std::string> input;  // path, or inline JSON
    std::optional<std::string> inline_json;
    std::size_t                budget = 1'000'000;
    std::uint64_t              seed   = 1;
    std::optional<std::string> output;
    bool                       emit_dot = false;
    std::optional<std::size_t> nmax;
  };

  // A report whose own checks failed; printed, then exit code 2.
  struct Falsified {
    json        report;
    std::string what;
  };

  inline int exit_code_for(ErrorKind k) {
    switch (k) {
      case ErrorKind::order_exceeds_budget: return budget_exceeded;
      case ErrorKind::closure_violation:
      case ErrorKind::invariant_violation: return falsified;
      default: return input_error;
    }
  }

  namespace detail {

    inline bool looks_inline(std::string const& s) {
      auto pos = s.find_first_not_of(" \t\r\n");
      return pos != std::string::npos && (s[pos] == '{' || s[pos] == '[');
    }

    inline std::string read_input(RunConfig const& cfg) {
      if (cfg.input && cfg.inline_json) {
        throw io::bad("give the input either with --input or inline, not both");
      }
      if (cfg.inline_json) return *cfg.inline_json;
      if (!cfg.input) throw io::bad("this command needs an input (--input or inline JSON)");
      if (looks_inline(*cfg.input)) return *cfg.input;
      std::ifstream f(*cfg.input, std::ios::binary);
      if (!f) throw io::bad("cannot read " + *cfg.input);
      std::ostringstream os;
      os << f.rdbuf();
      return os.str();
    }

    inline json analyze_map(json const& in, RunConfig const& cfg, std::string& dot) {
      json                    out;
      FiniteMap               f;
      if (in.contains("polys")) {
        auto model = io::to_polynomial_map(in);
        f          = model.map;
        out["points"] = model.points;
        out["table"]  = f.table();
      } else {
        f = io::to_finite_map(in);
      }
      auto const rep = iterated_image(f, cfg.budget);
      auto const fny = verify_fny(f, cfg.budget);
      auto const k   = kernel_group(f, rep.orbit);
      out["N"]                     = f.size();
      out["N_image"]               = rep.n_image;
      out["image_chain"]           = rep.image_chain;
      out["eventual_image"]        = rep.eventual_image;
      out["restriction_bijective"] = rep.restriction_bijective;
      out["orbit"]                 = io::to_json(rep.orbit);
      out["idempotent"]            = semigroup_power(f, rep.orbit.idempotent_exponent()).table();
      out["kernel_group_size"]     = k.size();
      out["fny"] = {{"checked_up_to", fny.checked_up_to},
                    {"image_invariant", fny.image_invariant},
                    {"restriction_bijective", fny.restriction_bijective},
                    {"restriction_compatible", fny.restriction_compatible}};
      if (cfg.emit_dot) dot = to_dot(f);
      if (!fny.ok()) throw Falsified{out, "eventual-image checks failed"};
      return out;
    }

    template <typename T>
    json decomposition_json(Matrix<T> const& f, std::size_t budget) {
      auto const rep = decomposition_report(f, budget);
      json       tail = json::array(), group = json::array();
      for (auto const& a : rep.tail) tail.push_back(io::to_json(a));
      for (auto const& a : rep.kernel_group) group.push_back(io::to_json(a));
      json out = {{"m", rep.m},
                  {"orbit", io::to_json(rep.orbit)},
                  {"tail", tail},
                  {"kernel_group", group},
                  {"tail_pairwise_distinct", rep.tail_pairwise_distinct},
                  {"tail_disjoint_from_group", rep.tail_disjoint_from_group},
                  {"neutral_equals_e", rep.neutral_equals_e},
                  {"index_equals_m", rep.index_equals_m}};
      if (!rep.ok()) throw Falsified{out, "decomposition checks failed"};
      return out;
    }

    template <typename T>
    json fitting_json(FittingData<T> const& fit) {
      return {{"m", fit.m},
              {"eventual_image_dim", fit.image_basis.size()},
              {"image_basis", io::to_json(fit.image_basis)},
              {"kernel_basis", io::to_json(fit.kernel_basis)},
              {"e", io::to_json(fit.e)},
              {"g", io::to_json(fit.g)}};
    }

    inline json analyze_matrix(json const& in, RunConfig const& cfg) {
      auto const input = io::to_matrix_input(in);
      json       out;
      if (input.prime) {
        FpMatrix const f = reduce_mod(input.entries, *input.prime);
        out["field"]     = {{"Fp", *input.prime}};
        out["fitting"]   = fitting_json(fitting(f));
        out["decomposition"] = decomposition_json(f, cfg.budget);
        return out;
      }
      QMatrix const f   = input.entries;
      auto const    fit = fitting(f);
      auto const    tor = is_torsion(fit.g);
      out["field"]      = "Q";
      out["fitting"]    = fitting_json(fit);
      out["torsion"]    = {{"finite_order", tor.finite_order},
                        {"order", tor.finite_order ? json(tor.order) : json(nullptr)},
                        {"minimal_polynomial", io::to_json(tor.minimal_polynomial)},
                        {"cyclotomic_orders", tor.cyclotomic_orders}};
      if (tor.finite_order) {
        auto const g_orbit = analyze(fit.g, cfg.budget);
        out["g_orbit"]     = io::to_json(g_orbit);
        out["decomposition"] = decomposition_json(f, cfg.budget);
        if (g_orbit.index != 1 || g_orbit.period != tor.order) {
          throw Falsified{out, "orbit of g disagrees with its torsion order"};
        }
      } else {
        out["decomposition"] = nullptr;
      }
      return out;
    }

    inline json cone_command(std::string const& verb, json const& in, RunConfig const& cfg) {
      auto cone_arg = [&]() { return io::to_cone(in.contains("cone") ? in.at("cone") : in); };
      if (verb == "span") {
        PolyCone const c     = cone_arg();
        auto const     faces = enumerate_faces(c);
        json           fl    = json::array();
        for (auto const& f : faces) fl.push_back(io::to_json(f.generators()));
        return {{"dim", span(c).dim()},
                {"basis", io::to_json(span(c).basis)},
                {"facet_normals", io::to_json(facets(c).normals)},
                {"faces", fl}};
      }
      if (verb == "extremal") {
        PolyCone const c   = cone_arg();
        PolyCone const t   = io::to_cone(io::field_of(in, "subcone"));
        auto const     res = is_extremal(t, c);
        json           out = {{"extremal", res.extremal},
                    {"equals_cone_cap_span", res.equals_cone_cap_span},
                    {"minimal_face", io::to_json(minimal_face(c, t).generators())},
                    {"witness", nullptr}};
        if (res.witness) {
          out["witness"] = {{"a", io::to_json(res.witness->first)},
                            {"b", io::to_json(res.witness->second)}};
        }
        return out;
      }
      if (verb == "chain") {
        PolyCone const        c = cone_arg();
        std::vector<PolyCone> chain;
        for (auto const& t : io::field_of(in, "chain")) chain.push_back(io::to_cone(t));
        auto const st = chain_stabilization(chain, c);
        return {{"index", st.index}, {"span_dims", st.span_dims}};
      }
      if (verb == "relative-chain") {
        PolyCone const c = cone_arg();
        QMatrix const  m = io::to_matrix_input(io::field_of(in, "matrix")).entries;
        std::size_t    nmax = cfg.nmax ? *cfg.nmax
                              : in.contains("nmax") ? io::to_size(in.at("nmax"), "nmax")
                                                    : c.dim() + 1;
        auto const ch = relative_cone_chain(c, m, nmax);
        json       cones = json::array();
        for (auto const& k : ch.cones) cones.push_back(io::to_json(k.generators()));
        return {{"cones", cones},
                {"kernel_dims", ch.kernel_dims},
                {"cone_stable_at", ch.cone_stable_at},
                {"kernel_stable_at", ch.kernel_stable_at}};
      }
      throw io::bad("unknown cone verb \"" + verb + "\" (span, extremal, chain, relative-chain)");
    }

    template <typename T>
    json elliptic_on(Curve<T> const& e, std::string const& verb, json const& in) {
      if (verb == "order") {
        auto const ord = torsion_order(e, io::to_point(io::field_of(in, "point"), e));
        return {{"finite", ord.has_value()}, {"order", ord ? json(*ord) : json(nullptr)}};
      }
      if (verb == "decide") {
        std::vector<std::vector<ECPoint<T>>> fibers;
        auto const&                          fj = io::field_of(in, "fibers");
        if (!fj.is_array()) throw io::bad("fibers must be an array");
        for (auto const& fiber : fj) {
          if (!fiber.is_array()) throw io::bad("each fiber must be an array of points");
          fibers.emplace_back();
          for (auto const& pt : fiber) fibers.back().push_back(io::to_point(pt, e));
        }
        std::vector<std::size_t> reps;
        if (in.contains("representatives")) reps = io::to_index_list(in.at("representatives"), "representative");
        auto const dec = decide_translate_subgroup(e, fibers, reps);
        if (!dec.yes) {
          return {{"yes", false},
                  {"witness", {{"fiber_index", dec.fiber_index},
                               {"difference", io::to_json(dec.witness_difference)}}}};
        }
        return {{"yes", true},
                {"n", dec.n},
                {"subgroup_generators", io::to_json(dec.subgroup_generators)},
                {"representatives", io::to_json(dec.representatives)},
                {"subgroup", io::to_json(dec.subgroup)}};
      }
      if constexpr (std::is_same_v<T, ModP>) {
        if (verb == "fixed-point") {
          auto const z0 = io::to_point(io::field_of(in, "z0"), e);
          auto const y  = fixed_point_of_translated_isogeny(e, io::to_int(io::field_of(in, "k"), "k"), z0);
          return {{"fixed_point", y ? io::to_json(*y) : json(nullptr)}};
        }
        if (verb == "degree-check") {
          auto const dc = multiplication_degree_check(e, io::to_size(io::field_of(in, "n"), "n"));
          json       out = {{"n", dc.n},
                      {"group_order", dc.group_order},
                      {"kernel_size", dc.kernel_size},
                      {"image_size", dc.image_size},
                      {"kernel_divides_n_squared", dc.kernel_divides_n_squared},
                      {"index_equals_kernel", dc.index_equals_kernel}};
          if (!dc.ok()) throw Falsified{out, "degree check failed"};
          return out;
        }
      } else {
        if (verb == "fixed-point" || verb == "degree-check") {
          throw io::bad(verb + " needs a prime field");
        }
      }
      throw io::bad("unknown elliptic verb \"" + verb + "\" (order, decide, fixed-point, degree-check)");
    }

    inline json elliptic_command(std::string const& verb, json const& in) {
      auto const field = io::to_field(io::field_of(in, "field"));
      Rational   a     = io::to_rational(io::field_of(in, "a"));
      Rational   b     = io::to_rational(io::field_of(in, "b"));
      if (field) {
        if (*field <= 3) throw io::bad("characteristic must exceed 3 for short Weierstrass form");
        return elliptic_on(CurveFp(reduce_mod(a, *field), reduce_mod(b, *field)), verb, in);
      }
      return elliptic_on(CurveQ(a, b), verb, in);
    }

    inline json construct_shift(json const& in, RunConfig const& cfg, std::string& dot) {
      MonotheticModel model{io::to_size(io::field_of(in, "p"), "p"),
                            io::to_size(io::field_of(in, "h_order"), "h_order"),
                            in.contains("base_size") ? io::to_size(in.at("base_size"), "base_size") : 2,
                            in.contains("generator_step")
                                ? io::to_size(in.at("generator_step"), "generator_step")
                                : 1};
      auto const rep = verify_theorem(model, cfg.budget);
      json       out = {{"state_count", rep.state_count},
                  {"index", rep.orbit.index},
                  {"period", rep.orbit.period},
                  {"order", rep.orbit.order()},
                  {"idempotent_exponent", rep.orbit.idempotent_exponent()},
                  {"checks",
                   {{"index_equals_p", rep.index_equals_p},
                    {"period_equals_h_order", rep.period_equals_h_order},
                    {"order_matches", rep.order_matches},
                    {"idempotent_matches", rep.idempotent_matches},
                    {"idempotent_exponent_invariant", rep.idempotent_exponent_invariant},
                    {"kernel_group_isomorphic", rep.kernel_group_isomorphic},
                    {"generator_matches", rep.generator_matches},
                    {"eventual_image_matches", rep.eventual_image_matches}}}};
      if (cfg.emit_dot) dot = to_dot(build(model));
      if (!rep.ok()) throw Falsified{out, "shift construction checks failed"};
      return out;
    }

    inline json construct_product(json const& in, RunConfig const& cfg, std::string& dot) {
      auto const pc = product_construction(io::to_index_list(io::field_of(in, "nu"), "nu"),
                                           io::to_index_list(io::field_of(in, "h"), "h"),
                                           io::to_index_list(io::field_of(in, "j"), "j"),
                                           io::to_size(io::field_of(in, "B"), "B"), cfg.budget);
      json out = {{"y_tilde_size", pc.y_tilde_size},
                  {"b_size", pc.b_size},
                  {"table", pc.map.table()},
                  {"psi", pc.psi},
                  {"psi_image", pc.psi_image},
                  {"N_image", pc.report.n_image},
                  {"eventual_image", pc.report.eventual_image},
                  {"image_inside_psi", pc.image_inside_psi},
                  {"psi_inside_its_image", pc.psi_inside_its_image}};
      if (cfg.emit_dot) dot = to_dot(pc.map);
      if (!pc.ok()) throw Falsified{out, "product construction checks failed"};
      return out;
    }

    inline json witness_gl2(RunConfig const& cfg) {
      std::size_t const nmax = cfg.nmax.value_or(5);
      auto const        w    = unbounded_product_witness(nmax);
      QMatrix const     id   = QMatrix::identity(2, Rational(0));
      json              out  = {{"f", io::to_json(w.f)},
                    {"g", io::to_json(w.g)},
                    {"nmax", nmax},
                    {"f_squared", io::to_json(w.f * w.f)},
                    {"g_squared", io::to_json(w.g * w.g)},
                    {"fg", io::to_json(w.f * w.g)},
                    {"fg_power_nmax", io::to_json(w.fg_powers.back())},
                    {"f_squared_identity", w.f_squared_identity},
                    {"g_squared_identity", w.g_squared_identity},
                    {"powers_match_formula", w.powers_match_formula},
                    {"powers_pairwise_distinct", w.powers_pairwise_distinct},
                    {"fg_infinite_order", w.fg_infinite_order}};
      if (!w.ok()) throw Falsified{out, "witness checks failed"};
      return out;
    }

    inline void emit(RunConfig const& cfg, std::string const& text, std::ostream& out) {
      if (cfg.output) {
        std::ofstream f(*cfg.output, std::ios::binary);
        if (!f) throw io::bad("cannot write " + *cfg.output);
        f << text;
      } else {
        out << text;
      }
    }

    inline void error_json(std::ostream& err, char const* kind, std::string const& message,
                           int code, std::size_t index = Error::npos) {
      json e = {{"error", kind}, {"message", message}, {"exit_code", code}};
      if (index != Error::npos) e["index"] = index;
      err << e.dump() << "\n";
    }

    inline int verify_all(RunConfig const& cfg, std::ostream& out) {
      auto const         results = sweeps::run_all(cfg.seed);
      std::ostringstream table;
      json               rows = json::array();
      bool               all  = true;
      for (auto const& r : results) {
        all = all && r.passed();
        table << (r.passed() ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title << "  cases="
              << r.cases << " failures=" << r.failures << " time=" << std::fixed
              << std::setprecision(3) << r.seconds << "s/" << r.limit << "s";
        if (!r.note.empty()) table << "  (" << r.note << ")";
        table << "\n";
        rows.push_back({{"id", r.id},
                        {"title", r.title},
                        {"passed", r.passed()},
                        {"cases", r.cases},
                        {"failures", r.failures},
                        {"limit_seconds", r.limit},
                        {"note", r.note}});
      }
      out << table.str();
      if (cfg.output) {
        json report = {{"command", "verify-all"},
                       {"seed", cfg.seed},
                       {"versions", module_versions()},
                       {"input_sha256", sha256_hex("")},
                       {"criteria", rows}};
        emit(cfg, report.dump(2) + "\n", out);
      }
      return all ? ok : falsified;
    }

  }  // namespace detail

  inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App  app{"Exact models of algebraic dynamical systems", "algdyn"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));

    auto common = [&](CLI::App* sub, bool with_input) {
      if (with_input) {
        sub->add_option("--input,-i", cfg.input, "JSON file, or inline JSON");
        sub->add_option("json", cfg.inline_json, "inline JSON input");
      }
      sub->add_option("--budget", cfg.budget, "maximum order of a cyclic semigroup")
          ->check(CLI::PositiveNumber);
      sub->add_option("--seed", cfg.seed, "seed for randomized sweeps");
      sub->add_option("--output,-o", cfg.output, "write the report here instead of stdout");
      sub->add_flag("--emit-dot", cfg.emit_dot, "include the functional graph in DOT form");
      sub->add_option("--nmax", cfg.nmax, "largest exponent for chains and witnesses")
          ->check(CLI::PositiveNumber);
    };
    struct Sub {
      char const* name;
      char const* help;
      bool        input;
      char const* verbs;
    };
    for (Sub s : {Sub{"analyze-map", "iterated image and orbit of a finite or polynomial map", true, nullptr},
                  Sub{"analyze-matrix", "Fitting decomposition and semigroup of a matrix", true, nullptr},
                  Sub{"cone", "polyhedral cones", true, "span|extremal|chain|relative-chain"},
                  Sub{"elliptic", "elliptic curve point groups", true, "order|decide|fixed-point|degree-check"},
                  Sub{"construct-shift", "shift system with prescribed index and period", true, nullptr},
                  Sub{"construct-product", "product construction on Ỹ × B", true, nullptr},
                  Sub{"witness-gl2", "two involutions with product of infinite order", false, nullptr},
                  Sub{"verify-all", "run every verification sweep", false, nullptr}}) {
      CLI::App* sub = app.add_subcommand(s.name, s.help);
      if (s.verbs) sub->add_option("verb", cfg.verb, s.verbs)->required();
      common(sub, s.input);
      sub->callback([&cfg, name = std::string(s.name)] { cfg.subcommand = name; });
    }

    try {
      std::reverse(args.begin(), args.end());
      app.parse(args);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return ok;
    } catch (CLI::CallForVersion const&) {
      out << version << "\n";
      return ok;
    } catch (CLI::ParseError const& e) {
      detail::error_json(err, "InvalidInput", e.what(), input_error);
      return input_error;
    }

    try {
      if (cfg.subcommand == "verify-all") return detail::verify_all(cfg, out);

      std::string text, dot;
      if (cfg.subcommand != "witness-gl2") text = detail::read_input(cfg);
      json in;
      if (!text.empty()) {
        try {
          in = json::parse(text);
        } catch (json::parse_error const& e) {
          throw io::bad(std::string("malformed JSON: ") + e.what());
        }
      }

      json report = {{"command", cfg.subcommand},
                     {"input_sha256", sha256_hex(text)},
                     {"versions", module_versions()},
                     {"budget", cfg.budget}};
      if (!cfg.verb.empty()) report["verb"] = cfg.verb;

      int code = ok;
      try {
        json result;
        if (cfg.subcommand == "analyze-map") result = detail::analyze_map(in, cfg, dot);
        else if (cfg.subcommand == "analyze-matrix") result = detail::analyze_matrix(in, cfg);
        else if (cfg.subcommand == "cone") result = detail::cone_command(cfg.verb, in, cfg);
        else if (cfg.subcommand == "elliptic") result = detail::elliptic_command(cfg.verb, in);
        else if (cfg.subcommand == "construct-shift") result = detail::construct_shift(in, cfg, dot);
        else if (cfg.subcommand == "construct-product") result = detail::construct_product(in, cfg, dot);
        else result = detail::witness_gl2(cfg);
        report["result"] = std::move(result);
      } catch (Falsified const& f) {
        report["result"] = f.report;
        detail::error_json(err, "InvariantViolation", f.what, falsified);
        code = falsified;
      }
      if (cfg.emit_dot && !dot.empty()) {
        report["dot"] = dot;
        if (cfg.output) {
          std::ofstream d(*cfg.output + ".dot", std::ios::binary);
          d << dot;
        }
      }
      detail::emit(cfg, report.dump(2) + "\n", out);
      return code;
    } catch (Error const& e) {
      int code = exit_code_for(e.kind());
      detail::error_json(err, e.name(), e.what(), code, e.index());
      return code;
    } catch (json::exception const& e) {
      detail::error_json(err, "InvalidInput", e.what(), input_error);
      return input_error;
    }
  }

  inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(std::move(args), out, err);
  }

}  // namespace algdyn::cli

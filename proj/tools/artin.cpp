#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "artin/artin.hpp"
#include "artin/json_io.hpp"

using namespace artin;

namespace {

struct Globals {
  int prec = 0;
  std::string out;
  std::string format;  ///< json by default, text for bounds
  bool no_timings = false;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::InvalidInput, path + ": " + e.what());
  }
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out);
  if (!out) throw Error(Errc::InvalidInput, "cannot write " + g.out);
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

template <std::size_t N>
Series<N> clip(const Series<N>& s, const Globals& g) {
  return g.prec > 0 && g.prec < s.precision() ? s.truncated(g.prec) : s;
}

std::vector<int> parse_orders(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::InvalidInput, "bad order list " + text);
    }
  }
  return out;
}

DegreeBoundFns::Fn lambda_from_json(const Json& j) {
  if (j.contains("constant")) {
    const long c = j.at("constant").get<long>();
    return [c](int, const BoundValue&, const BoundArithmetic&) { return BoundValue(c); };
  }
  if (j.value("identity", false)) {
    return [](int, const BoundValue& d, const BoundArithmetic&) { return d; };
  }
  return power_family(j.value("a", 1L), j.value("b", 0L), j.value("c", std::uint64_t{1}), j.value("k", std::uint64_t{1}));
}

DegreeBoundFns lambda_option(const std::string& choice) {
  if (choice == "default") return default_degree_bounds();
  if (choice == "stub1") return stub_degree_bounds();
  if (choice.rfind("file:", 0) == 0) {
    const Json j = read_json(choice.substr(5));
    DegreeBoundFns fns;
    fns.name = choice;
    fns.lambda1 = lambda_from_json(detail::field(j, "lambda1"));
    fns.lambda2 = lambda_from_json(detail::field(j, "lambda2"));
    return fns;
  }
  throw Error(Errc::InvalidInput, "unknown --lambda " + choice);
}

std::string render_bound(const BoundValue& v, const std::string& formula, const Globals& g, bool log_only) {
  if (g.format == "json") {
    Json j;
    j["value"] = to_json(v);
    j["formula"] = formula;
    return dump(j);
  }
  std::string flags;
  for (const auto& f : bound_flags_json(v.flags())) flags += " [" + f.get<std::string>() + "]";
  return v.to_string(!log_only) + flags + "\nformula: " + formula + "\n";
}

std::string report_text(const ExperimentReport& r, bool with_timings) {
  std::ostringstream out;
  out << "experiment: " << r.experiment << "\n";
  out << "instance: " << r.instance << "\n";
  out << "i: " << r.i;
  if (r.max_weight) out << "  D: " << *r.max_weight;
  out << "\n";
  for (const auto& m : r.measurements) out << m.name << ": " << m.order.to_string() << "\n";
  if (r.experiment == "search") {
    out << "enumeration size: " << r.enumeration_size << "\n";
    out << "certificate: " << r.certificate << "\n";
  }
  for (std::size_t k = 0; k < r.witness.size() && k < r.variables.size(); ++k) {
    out << r.variables[k] << " = " << to_string(r.witness[k]) << "\n";
  }
  out << "verdicts:";
  for (const auto& v : r.verdicts) out << " " << v;
  out << "\n";
  if (with_timings) {
    for (const auto& t : r.timings_ms) out << "time " << t.stage << ": " << t.ms << " ms\n";
  }
  return out.str();
}

std::string render_report(const ExperimentReport& r, const Globals& g) {
  return g.format == "json" ? dump(to_json(r, !g.no_timings)) : report_text(r, !g.no_timings);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective Artin approximation toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--prec", g.prec, "Truncate inputs to this precision")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Write output to FILE");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text", "m2"}));
  app.add_flag("--no-timings", g.no_timings, "Omit timings from reports");

  // prepare
  auto* prepare_cmd = app.add_subcommand("prepare", "Weierstrass preparation of a series in (t, z)");
  std::string input;
  prepare_cmd->add_option("--input", input, "Series JSON")->required();
  prepare_cmd->add_option("--prec", g.prec, "Truncate input to this precision")->check(CLI::PositiveNumber);
  prepare_cmd->add_option("--out", g.out, "Write output to FILE");
  prepare_cmd->add_option("--format", g.format)->check(CLI::IsMember({"json", "text"}));

  // jets
  auto* jets_cmd = app.add_subcommand("jets", "Jet system of a binomial system");
  std::string binomials, orders;
  jets_cmd->add_option("--binomials", binomials, "Binomial system JSON")->required();
  jets_cmd->add_option("--orders", orders, "Comma-separated orders d_j")->required();
  jets_cmd->add_option("--format", g.format)->check(CLI::IsMember({"json", "text", "m2"}));
  jets_cmd->add_option("--out", g.out, "Write output to FILE");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate effective bounds");
  bounds_cmd->require_subcommand(1);
  int bn = 1, bp = 1, bd = 1, bi = 1, bk = 0, bq = 1;
  std::string lambda = "default", variant = "max";
  bool exact_out = false, log_out = false;
  double max_bits = 1 << 20;
  auto add_common = [&](CLI::App* c) {
    c->add_option("--lambda", lambda, "default | stub1 | file:PATH");
    c->add_flag("--exact", exact_out, "Print the exact integer when available");
    c->add_flag("--log", log_out, "Print the magnitude 10^{m}");
    c->add_option("--max-bits", max_bits, "Exact evaluation budget in bits");
    c->add_option("--format", g.format)->check(CLI::IsMember({"json", "text"}));
    c->add_option("--out", g.out, "Write output to FILE");
  };
  auto* beta_cmd = bounds_cmd->add_subcommand("beta", "Height recursion beta_k(n, d, i)");
  beta_cmd->add_option("--n", bn)->required();
  beta_cmd->add_option("--d", bd)->required();
  beta_cmd->add_option("--i", bi)->required();
  beta_cmd->add_option("--k", bk, "Height, default 0");
  beta_cmd->add_option("--variant", variant)->check(CLI::IsMember({"max", "sum"}));
  add_common(beta_cmd);
  auto* eprime_cmd = bounds_cmd->add_subcommand("eprime", "e'(n, d)");
  eprime_cmd->add_option("--n", bn)->required();
  eprime_cmd->add_option("--d", bd)->required();
  add_common(eprime_cmd);
  auto* hermann_cmd = bounds_cmd->add_subcommand("hermann", "Exponent e with rad(I)^e in I");
  hermann_cmd->add_option("--n", bn)->required();
  hermann_cmd->add_option("--p", bp)->required();
  hermann_cmd->add_option("--d", bd)->required();
  add_common(hermann_cmd);
  auto* comp_cmd = bounds_cmd->add_subcommand("components", "Component count d^min(n,p)");
  comp_cmd->add_option("--n", bn)->required();
  comp_cmd->add_option("--p", bp)->required();
  comp_cmd->add_option("--d", bd)->required();
  add_common(comp_cmd);
  auto* inter_cmd = bounds_cmd->add_subcommand("intersection", "Intersection degree bound");
  inter_cmd->add_option("--n", bn)->required();
  inter_cmd->add_option("--q", bq)->required();
  inter_cmd->add_option("--d", bd)->required();
  add_common(inter_cmd);
  auto* binom_cmd = bounds_cmd->add_subcommand("binomial", "Artin bound for a binomial system");
  bool global = false;
  binom_cmd->add_option("--binomials", binomials)->required();
  binom_cmd->add_option("--orders", orders);
  binom_cmd->add_flag("--global", global);
  binom_cmd->add_option("--i", bi)->required();
  add_common(binom_cmd);

  // experiments
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment");
  exp_cmd->require_subcommand(1);
  int ep = 2, eq = 3, ei = 1;
  unsigned workers = 0;
  std::string vpath, poly, space, solution;
  auto add_exp_common = [&](CLI::App* c) {
    c->add_option("--format", g.format)->check(CLI::IsMember({"json", "text"}));
    c->add_option("--out", g.out, "Write output to FILE");
    c->add_option("--prec", g.prec, "Truncate inputs to this precision")->check(CLI::PositiveNumber);
    c->add_flag("--no-timings", g.no_timings, "Omit timings from reports");
  };
  auto* coprime_cmd = exp_cmd->add_subcommand("coprime", "Coprime powers (v^q, v^p) and root recovery");
  coprime_cmd->add_option("--p", ep)->required();
  coprime_cmd->add_option("--q", eq)->required();
  coprime_cmd->add_option("--v", vpath, "Series JSON")->required();
  add_exp_common(coprime_cmd);
  auto* search_cmd = exp_cmd->add_subcommand("search", "Empirical Artin-function lower bound");
  search_cmd->add_option("--poly", poly, "Polynomial JSON")->required();
  search_cmd->add_option("--i", ei)->required();
  search_cmd->add_option("--space", space, "Search space JSON")->required();
  search_cmd->add_option("--workers", workers, "Worker threads");
  add_exp_common(search_cmd);
  auto* decouple_cmd = exp_cmd->add_subcommand("decouple", "Decoupling pipeline on an approximate solution");
  decouple_cmd->add_option("--binomials", binomials)->required();
  decouple_cmd->add_option("--solution", solution, "Solution JSON")->required();
  decouple_cmd->add_option("--i", ei)->required();
  add_exp_common(decouple_cmd);

  CLI11_PARSE(app, argc, argv);
  if (g.format.empty()) g.format = *bounds_cmd ? "text" : "json";

  try {
    if (*prepare_cmd) {
      const Series2 s = clip(series_from_json<2>(read_json(input)), g);
      const WeierstrassForm form = prepare(s);
      if (g.format == "text") {
        std::ostringstream out;
        out << "unit: " << to_string(form.unit) << "\n";
        out << "degree: " << form.degree << "\n";
        for (int j = 0; j < form.degree; ++j) out << "a_" << j << ": " << to_string(form.coeffs[j]) << "\n";
        out << "certified_prec: " << form.certified_prec << "\n";
        emit(g, out.str());
      } else {
        emit(g, dump(to_json(form)));
      }
    } else if (*jets_cmd) {
      const BinomialSystem sys = binomial_system_from_json(read_json(binomials));
      const OrderVector d(parse_orders(orders));
      const WeightsResult w = homogeneity_weights(sys, d);
      if (const auto* bad = std::get_if<Incompatible>(&w)) {
        Json j;
        j["verdict"] = "Incompatible";
        j["binomial"] = bad->binomial;
        j["alpha_weight"] = bad->alpha_weight;
        j["beta_weight"] = bad->beta_weight;
        emit(g, g.format == "json" ? dump(j)
                                   : "Incompatible: binomial " + std::to_string(bad->binomial) + " has weights " +
                                         std::to_string(bad->alpha_weight) + " != " +
                                         std::to_string(bad->beta_weight) + "\n");
        return 0;
      }
      const JetSystem jets = generate_jet_system(sys, d);
      // Highest power of z first, as the equations are usually listed.
      std::vector<MultiPoly> listed;
      for (const auto& fam : jets.families) listed.insert(listed.end(), fam.polys.rbegin(), fam.polys.rend());
      if (g.format == "m2") {
        emit(g, to_m2(jets.variables, listed));
      } else if (g.format == "text") {
        std::ostringstream out;
        for (const auto& p : listed) out << to_string(p) << "\n";
        emit(g, out.str());
      } else {
        emit(g, dump(to_json(jets)));
      }
    } else if (*bounds_cmd) {
      if (exact_out && log_out) throw Error(Errc::InvalidInput, "--exact and --log are exclusive");
      BoundOptions opts;
      opts.max_bits = max_bits;
      opts.variant = variant == "sum" ? BetaVariant::ProofSum : BetaVariant::StatedMax;
      BoundEvaluator ev(lambda_option(lambda), opts);
      const std::string lam = "; lambda = " + ev.fns().name;
      if (*beta_cmd) {
        const BoundValue v = ev.beta(bk, bn, bd, bi);
        const std::string formula =
            opts.variant == BetaVariant::StatedMax
                ? "beta_k(n,d,i) = (n+3)^2 (d+1)^(2n+3) max_{k<h<=n+1} beta'_h(n, lambda1(n+1,d), i), "
                  "beta'_k(n,d,i) = (e'+1) beta_{k+1}(n, max(k(d-1),1), i) + 1, beta_{n+1} = beta'_{n+1} = 2"
                : "beta_k(n,d,i) = (n+1)(n+3)(d+1)^(n+2) max(d,1)^(n+1) max_{k<h<=n+1} beta'_h(n, lambda1(n+1,d), i), "
                  "beta'_k(n,d,i) = (e'+1) beta_{k+1}(n, max(k(d-1),1), i) + 1, beta_{n+1} = beta'_{n+1} = 2";
        emit(g, render_bound(v, formula + "; k = " + std::to_string(bk) + lam, g, log_out));
      } else if (*eprime_cmd) {
        emit(g, render_bound(ev.e_prime(bn, bd),
                             "e' = (n+3)^2 (1 + lambda2(n+1,d) + (n+1) ((d^(n+1) - 2) lambda2(n+1,d))^(2^n))^(n+2)" + lam,
                             g, log_out));
      } else if (*hermann_cmd) {
        const HermannResult h = hermann_exponent(bn, bp, bd, ev.arithmetic());
        emit(g, render_bound(h.value,
                             "e = min(n,p) (n+2) (d+1)^(min(n,p)+1); crude (n+2)^2 (d+1)^(n+1) = " +
                                 h.crude.to_string(!log_out) + (h.within ? " holds" : " VIOLATED"),
                             g, log_out));
      } else if (*comp_cmd) {
        emit(g, render_bound(component_count_bound(bn, bp, bd, ev.arithmetic()), "s <= d^min(n,p)", g, log_out));
      } else if (*inter_cmd) {
        emit(g, render_bound(intersection_degree_bound(bn, bq, bd, ev.arithmetic()), "n ((q-1) d)^(2^(n-1)) + d", g,
                             log_out));
      } else if (*binom_cmd) {
        const BinomialSystem sys = binomial_system_from_json(read_json(binomials));
        if (global == !orders.empty()) throw Error(Errc::InvalidInput, "give exactly one of --orders or --global");
        if (global) {
          const GlobalBound gb = binomial_global_bound(sys, bi, ev);
          std::string formula = "orders capped at i-1 = " + std::to_string(gb.cap) + "; max over " +
                                std::to_string(gb.compatible_vectors) + " compatible order vectors of max(q e i, greenberg) + D";
          if (!gb.worst) formula += "; no compatible vector, unit term q e i only";
          formula += "; log10 log10 value = " + std::to_string(gb.log10_log10_value) + " vs n i = " +
                     std::to_string(gb.n_times_i) + lam;
          emit(g, render_bound(gb.value, formula, g, log_out));
        } else {
          const RestrictedBound rb = binomial_restricted_bound(sys, OrderVector(parse_orders(orders)), bi, ev);
          if (g.format == "json") {
            Json j = to_json(rb);
            j["formula"] = "max(q e i, greenberg(sum d_j, deg, i)) + D" + lam;
            emit(g, dump(j));
          } else {
            std::ostringstream out;
            out << rb.value.to_string(!log_out) << "\n";
            out << "a_part: " << rb.a_part.to_string(!log_out) << "  b_part (D): " << rb.max_weight << "\n";
            out << "q: " << rb.q.to_string() << "  e: " << rb.e.to_string() << "\n";
            out << "formula: max(q e i, greenberg(sum d_j, deg, i)) + D" << lam << "\n";
            emit(g, out.str());
          }
        }
      }
    } else if (*exp_cmd) {
      if (*coprime_cmd) {
        const Series2 v = clip(series_from_json<2>(read_json(vpath)), g);
        emit(g, render_report(coprime_experiment(v, ep, eq), g));
      } else if (*search_cmd) {
        const MultiPoly f = polynomial_from_json(read_json(poly));
        SearchSpace sp = search_space_from_json(read_json(space));
        if (workers > 0) sp.workers = workers;
        if (g.prec > 0) sp.precision = std::min(sp.precision, g.prec);
        emit(g, render_report(empirical_lower_bound(f, ei, sp), g));
      } else if (*decouple_cmd) {
        const BinomialSystem sys = binomial_system_from_json(read_json(binomials));
        std::vector<Series2> x = series_list_from_json(read_json(solution));
        for (auto& s : x) s = clip(s, g);
        emit(g, render_report(verify_decoupling_pipeline(sys, x, ei), g));
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

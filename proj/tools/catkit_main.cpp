#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catkit/catalysis.hpp"
#include "catkit/cramer.hpp"
#include "catkit/io.hpp"

namespace {

using namespace catkit;

std::string fmt17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<int> parse_k_list(const std::string& s) {
  std::vector<int> ks;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string piece = s.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      const int k = std::stoi(piece, &used);
      if (used != piece.size() || k < 1) throw std::invalid_argument(piece);
      ks.push_back(k);
    } catch (const std::exception&) {
      throw ParseError("--k-list needs positive integers separated by commas, got \"" + piece +
                       "\"");
    }
    pos = comma + 1;
  }
  return ks;
}

struct TGrid {
  double a = 0;
  double b = 0;
  double step = 1;
};

TGrid parse_t_grid(const std::string& s) {
  TGrid g;
  char extra = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf%c", &g.a, &g.b, &g.step, &extra) != 3)
    throw ParseError("--t-grid must look like a:b:step, got \"" + s + "\"");
  if (!(g.step > 0) || !(g.b >= g.a) || !std::isfinite(g.a) || !std::isfinite(g.b))
    throw ParseError("--t-grid needs finite a <= b and step > 0");
  return g;
}

void print_scan_csv(const DominanceScan& s, const char* col) {
  std::cout << "n," << col << "\n";
  for (std::size_t i = 0; i < s.dominated.size(); ++i)
    std::cout << i + 1 << "," << (s.dominated[i] ? "true" : "false") << "\n";
  std::cout << "first_true=" << (s.first_true ? std::to_string(*s.first_true) : "none") << "\n";
  std::cout << "eventual_from="
            << (s.eventual_from ? std::to_string(*s.eventual_from) : "none") << "\n";
}

void print_scan_json(const DominanceScan& s) {
  nlohmann::json j;
  j["results"] = nlohmann::json::array();
  for (const bool b : s.dominated) j["results"].push_back(b);
  j["first_true"] = s.first_true ? nlohmann::json(*s.first_true) : nlohmann::json();
  j["eventual_from"] = s.eventual_from ? nlohmann::json(*s.eventual_from) : nlohmann::json();
  std::cout << j.dump(2) << "\n";
}

int run_guarded(const std::function<void()>& f) {
  try {
    f();
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SizeLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const WitnessNotFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "catkit: exact stochastic domination of convolution powers, rate functions,\n"
      "majorization, and catalyst construction over the rationals"};
  app.require_subcommand(1);

  std::size_t atom_cap = kDefaultAtomCap;
  app.add_option("--atom-cap", atom_cap, "largest allowed convolution support size")
      ->envname("CATKIT_ATOM_CAP")
      ->capture_default_str();

  auto* dominate = app.add_subcommand("dominate", "decide mu <=_st nu, with a witness when false");
  std::string dom_mu, dom_nu;
  dominate->add_option("mu", dom_mu, "measure JSON file")->required();
  dominate->add_option("nu", dom_nu, "measure JSON file")->required();

  auto* scan = app.add_subcommand("scan", "scan mu^{*n} <=_st nu^{*n} for n = 1..n-max");
  std::string scan_mu, scan_nu, scan_format = "csv";
  int scan_n_max = 12;
  scan->add_option("mu", scan_mu, "measure JSON file")->required();
  scan->add_option("nu", scan_nu, "measure JSON file")->required();
  scan->add_option("--n-max", scan_n_max, "largest power")->check(CLI::PositiveNumber);
  scan->add_option("--format", scan_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* figure1 = app.add_subcommand(
      "figure1", "distribution functions of mu^{*k} and nu^{*k} as paired-row CSV");
  std::string fig_mu, fig_nu, fig_k_list = "1";
  figure1->add_option("mu", fig_mu, "measure JSON file")->required();
  figure1->add_option("nu", fig_nu, "measure JSON file")->required();
  figure1->add_option("--k-list", fig_k_list, "comma-separated powers, e.g. 1,2,3");

  auto* cramer = app.add_subcommand("cramer", "rate function values on a t grid, as CSV");
  std::string cram_mu, cram_grid;
  cramer->add_option("mu", cram_mu, "measure JSON file")->required();
  cramer->add_option("--t-grid", cram_grid, "a:b:step")->required();

  auto* catalyst = app.add_subcommand("catalyst", "build and verify a catalyst, as JSON");
  std::string cat_a, cat_b;
  int cat_n = 1;
  bool cat_vector = false;
  catalyst->add_option("mu", cat_a, "measure JSON file (vector JSON with --vector)")->required();
  catalyst->add_option("nu", cat_b, "measure JSON file (vector JSON with --vector)")->required();
  catalyst->add_option("--n", cat_n, "power with mu^{*n} <=_st nu^{*n}")
      ->required()
      ->check(CLI::PositiveNumber);
  catalyst->add_flag("--vector", cat_vector,
                     "treat inputs as probability vectors and build a tensor catalyst");

  auto* approx = app.add_subcommand(
      "approx", "perturb x within l1 distance 2*eps so a tensor-power witness exists, as JSON");
  std::string apx_x, apx_y, apx_eps;
  int apx_variant = 1;
  int apx_n_max = 14;
  approx->add_option("x", apx_x, "vector JSON file")->required();
  approx->add_option("y", apx_y, "vector JSON file")->required();
  approx->add_option("--eps", apx_eps, "rational perturbation budget")->required();
  approx->add_option("--variant", apx_variant, "1 splits the new coordinate, 2 keeps it whole")
      ->check(CLI::IsMember({1, 2}));
  approx->add_option("--n-max", apx_n_max, "largest tensor power tried")
      ->check(CLI::PositiveNumber);

  auto* multicopy =
      app.add_subcommand("multicopy", "scan majorization of tensor powers for n = 1..n-max");
  std::string mc_x, mc_y, mc_format = "csv";
  int mc_n_max = 12;
  multicopy->add_option("x", mc_x, "vector JSON file")->required();
  multicopy->add_option("y", mc_y, "vector JSON file")->required();
  multicopy->add_option("--n-max", mc_n_max, "largest power")->check(CLI::PositiveNumber);
  multicopy->add_option("--format", mc_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (dominate->parsed()) {
    return run_guarded([&] {
      const AtomicMeasure a = load_measure(dom_mu);
      const AtomicMeasure b = load_measure(dom_nu);
      const auto w = dominance_witness(a, b);
      if (!w) {
        std::cout << "true\n";
      } else {
        std::cout << "false, witness t=" << to_human_string(w->t) << ": "
                  << to_human_string(w->tail_a) << " > " << to_human_string(w->tail_b) << "\n";
      }
    });
  }

  if (scan->parsed()) {
    return run_guarded([&] {
      const DominanceScan s =
          scan_dominance(load_measure(scan_mu), load_measure(scan_nu), scan_n_max, atom_cap);
      if (scan_format == "json")
        print_scan_json(s);
      else
        print_scan_csv(s, "dominated");
    });
  }

  if (figure1->parsed()) {
    return run_guarded([&] {
      const AtomicMeasure a = load_measure(fig_mu);
      const AtomicMeasure b = load_measure(fig_nu);
      for (const int k : parse_k_list(fig_k_list)) {
        const AtomicMeasure ak = convolve_power(a, k, atom_cap);
        const AtomicMeasure bk = convolve_power(b, k, atom_cap);
        std::vector<Rational> ts;
        ts.reserve(ak.size() + bk.size());
        for (const auto& at : ak.atoms) ts.push_back(at.x);
        for (const auto& at : bk.atoms) ts.push_back(at.x);
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        std::cout << "# k=" << k << "\n";
        std::cout << "t,F_mu,F_nu\n";
        for (const auto& t : ts) {
          const std::string ft = to_fraction_string(t);
          std::cout << ft << "," << to_fraction_string(1 - tail(ak, t)) << ","
                    << to_fraction_string(1 - tail(bk, t)) << "\n";
          std::cout << ft << "," << to_fraction_string(1 - mass_above(ak, t)) << ","
                    << to_fraction_string(1 - mass_above(bk, t)) << "\n";
        }
      }
    });
  }

  if (cramer->parsed()) {
    return run_guarded([&] {
      const AtomicMeasure a = load_measure(cram_mu);
      const TGrid g = parse_t_grid(cram_grid);
      std::cout << "t,rate_value,maximizer\n";
      const long steps = std::lround(std::floor((g.b - g.a) / g.step + 1e-9));
      for (long i = 0; i <= steps; ++i) {
        const double t = g.a + static_cast<double>(i) * g.step;
        const RateFunctionPoint p = cramer_transform(a, t);
        std::cout << fmt17(t) << "," << fmt17(p.value) << ","
                  << (p.maximizer ? fmt17(*p.maximizer) : "") << "\n";
      }
    });
  }

  if (catalyst->parsed()) {
    return run_guarded([&] {
      CatalystCertificate cert;
      if (cat_vector)
        cert = build_vector_catalyst(load_vector(cat_a), load_vector(cat_b), cat_n, atom_cap);
      else
        cert = build_catalyst(load_measure(cat_a), load_measure(cat_b), cat_n, atom_cap);
      std::cout << to_json(cert).dump(2) << "\n";
    });
  }

  if (approx->parsed()) {
    return run_guarded([&] {
      const ProbVector x = load_vector(apx_x);
      const ProbVector y = load_vector(apx_y);
      const Rational eps = parse_rational(apx_eps);
      const ApproxParams params{apx_n_max, atom_cap};
      nlohmann::json out;
      if (apx_variant == 1) {
        const Th1Result r = approx_th1(x, y, eps, params);
        out["certificate"] = to_json(r.certificate);
        out["eps"] = to_fraction_string(eps);
        out["k"] = r.k;
        out["p_eps"] = r.p_eps;
        out["witness_n"] = *r.certificate.n;
        out["x_eps"] = to_json(r.x_eps);
        out["x_eps_k"] = to_json(r.x_eps_k);
        out["l1_distance"] = to_fraction_string(r.l1_distance);
        out["conditions_pass"] = r.conditions.all();
      } else {
        const Th2Result r = approx_th2(x, y, eps, params);
        out["certificate"] = to_json(r.certificate);
        out["eps"] = to_fraction_string(eps);
        out["p_0"] = r.p_0;
        out["witness_n"] = *r.certificate.n;
        out["x_eps"] = to_json(r.x_eps);
        out["l1_distance"] = to_fraction_string(r.l1_distance);
        out["conditions_pass"] = r.conditions.all();
      }
      std::cout << out.dump(2) << "\n";
    });
  }

  if (multicopy->parsed()) {
    return run_guarded([&] {
      const DominanceScan s =
          scan_multicopy(load_vector(mc_x), load_vector(mc_y), mc_n_max, atom_cap);
      if (mc_format == "json")
        print_scan_json(s);
      else
        print_scan_csv(s, "majorized");
    });
  }

  std::cerr << "error: no subcommand\n";
  return 2;
}

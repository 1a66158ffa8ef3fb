#include <ctime>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acceptance/acceptance.hpp"
#include "robinflow/boundary.hpp"
#include "robinflow/disc.hpp"
#include "robinflow/errors.hpp"
#include "robinflow/io.hpp"
#include "robinflow/kernel.hpp"
#include "robinflow/robinflow.hpp"

namespace {

using json = nlohmann::ordered_json;
using robinflow::RobinSymbol;
namespace io = robinflow::io;

int exit_code_for(robinflow::errc c) {
  switch (c) {
    case robinflow::errc::validation: return 2;
    case robinflow::errc::unresolved: return 4;
    default: return 3;
  }
}

std::string timestamp_comment(bool no_header) {
  if (no_header) return "";
  char buf[64];
  std::time_t now = std::time(nullptr);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return std::string("robinflow ") + buf;
}

std::string sidecar_path(const std::string& out) {
  const auto dot = out.find_last_of('.');
  return (dot == std::string::npos ? out : out.substr(0, dot)) + ".json";
}

struct CommonOpts {
  double b = 1.0;
  std::string tau_json = "{\"kind\":\"zero\"}";
  std::string out;
  std::string format = "csv";
  bool no_header = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_tau = true) {
  cmd->add_option("--b", o.b, "field strength (> 0)");
  if (with_tau) cmd->add_option("--tau", o.tau_json, "Robin symbol as JSON");
  cmd->add_option("--out", o.out, "output file path");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--no-header", o.no_header, "suppress the timestamp comment line");
}

void emit(const CommonOpts& o, const io::Csv& table, const json& side) {
  if (o.format == "json") {
    if (o.out.empty())
      std::cout << side.dump(2) << "\n";
    else
      io::write_file(o.out, side.dump(2) + "\n");
    return;
  }
  const std::string text = table.serialize(timestamp_comment(o.no_header));
  if (o.out.empty()) {
    std::cout << text;
    std::cout << side.dump() << "\n";
  } else {
    io::write_file(o.out, text);
    io::write_file(sidecar_path(o.out), side.dump() + "\n");
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectra and spectral flow of exterior Landau-Robin operators on the unit disc"};
  app.require_subcommand(1);

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "per-mode eigenvalues in a window");
  CommonOpts sp_o;
  int sp_nmin = -5, sp_nmax = 5;
  std::vector<double> sp_window{0.2, 0.98};
  add_common(sp, sp_o);
  sp->add_option("--nmin", sp_nmin);
  sp->add_option("--nmax", sp_nmax);
  sp->add_option("--window", sp_window, "window lo,hi")->delimiter(',')->expected(2);

  // flow
  auto* fl = app.add_subcommand("flow", "spectral flow along the shift path tau + t");
  CommonOpts fl_o;
  double fl_mu = 0.5, fl_gamma = 30.0;
  int fl_nmax = 0;
  add_common(fl, fl_o);
  fl->add_option("--mu", fl_mu, "level to count crossings through");
  fl->add_option("--gamma", fl_gamma, "shift length (may be negative)");
  fl->add_option("--nmax", fl_nmax, "mode cutoff (0 = automatic)");

  // weyl
  auto* wl = app.add_subcommand("weyl", "flow counting function against gamma with affine fit");
  CommonOpts wl_o;
  double wl_mu = 0.5;
  std::vector<double> wl_gammas{20, 50, 100, 200};
  add_common(wl, wl_o);
  wl->add_option("--mu", wl_mu);
  wl->add_option("--gammas", wl_gammas, "increasing list")->delimiter(',');

  // mult
  auto* mt = app.add_subcommand("mult", "Landau-level Robin data T_n and multiplicity modes");
  CommonOpts mt_o;
  int mt_q = 1, mt_nmin = -10, mt_nmax = 10;
  add_common(mt, mt_o);
  mt->add_option("--q", mt_q, "Landau level index (>= 1)");
  mt->add_option("--nmin", mt_nmin);
  mt->add_option("--nmax", mt_nmax);

  // kernel
  auto* kn = app.add_subcommand("kernel", "fundamental solution and split integrals");
  CommonOpts kn_o;
  int kn_d = 1;
  double kn_mu = 0.5, kn_s = 1.0;
  std::vector<double> kn_x, kn_y;
  add_common(kn, kn_o, false);
  kn->add_option("--d", kn_d, "half-dimension");
  kn->add_option("--mu", kn_mu, "spectral parameter");
  kn->add_option("--s", kn_s, "argument of the split integrals");
  kn->add_option("--x", kn_x, "point in R^{2d}")->delimiter(',');
  kn->add_option("--y", kn_y, "point in R^{2d}")->delimiter(',');

  // boundary
  auto* bd = app.add_subcommand("boundary", "layer-potential Fourier modes on the circle");
  CommonOpts bd_o;
  double bd_mu = 0.5;
  int bd_nmin = -5, bd_nmax = 5;
  add_common(bd, bd_o);
  bd->add_option("--mu", bd_mu);
  bd->add_option("--nmin", bd_nmin);
  bd->add_option("--nmax", bd_nmax);

  // selftest
  auto* st = app.add_subcommand("selftest", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sp->parsed()) {
      const RobinSymbol tau = io::robin_symbol_from_json(sp_o.tau_json);
      io::Csv csv;
      csv.columns = {"n", "index", "lambda"};
      json side;
      side["count"] = 0;
      int total = 0;
      for (int n = sp_nmin; n <= sp_nmax; ++n) {
        robinflow::disc::ModeProblem mp{n, sp_o.b, tau(n)};
        const auto eigs =
            robinflow::disc::mode_eigenvalues(mp, {sp_window[0], sp_window[1]});
        for (size_t k = 0; k < eigs.size(); ++k) {
          csv.add_row({std::to_string(n), std::to_string(k), io::format_double(eigs[k])});
          ++total;
        }
      }
      side["count"] = total;
      emit(sp_o, csv, side);
    } else if (fl->parsed()) {
      const RobinSymbol tau = io::robin_symbol_from_json(fl_o.tau_json);
      robinflow::flow::FlowQuery q;
      q.b = fl_o.b;
      q.tau = tau;
      q.mu = fl_mu;
      q.gamma = fl_gamma;
      q.n_max = fl_nmax;
      const auto res = robinflow::flow::flow_shift(q);
      io::Csv csv;
      csv.columns = {"n", "t_star", "sign"};
      for (const auto& ev : res.crossings)
        csv.add_row({std::to_string(ev.mode), io::format_double(ev.t_star),
                     std::to_string(ev.sign)});
      json side;
      side["sf"] = res.sf;
      side["n_max"] = res.n_max_used;
      emit(fl_o, csv, side);
    } else if (wl->parsed()) {
      const RobinSymbol tau = io::robin_symbol_from_json(wl_o.tau_json);
      const auto fit = robinflow::flow::weyl_fit(wl_o.b, tau, wl_mu, wl_gammas);
      io::Csv csv;
      csv.columns = {"gamma", "count", "upward_sf", "residual"};
      for (size_t i = 0; i < wl_gammas.size(); ++i)
        csv.add_row({io::format_double(wl_gammas[i]), std::to_string(fit.counts[i]),
                     std::to_string(fit.upward_counts[i]), io::format_double(fit.residuals[i])});
      json side;
      side["slope"] = fit.slope;
      side["intercept"] = fit.intercept;
      emit(wl_o, csv, side);
    } else if (mt->parsed()) {
      const RobinSymbol tau = io::robin_symbol_from_json(mt_o.tau_json);
      const auto res = robinflow::disc::landau_multiplicity(
          mt_q, mt_o.b, [&](int n) { return tau(n); }, mt_nmin, mt_nmax);
      io::Csv csv;
      csv.columns = {"n", "T_n", "secular_value", "is_mode"};
      for (int n = mt_nmin; n <= mt_nmax; ++n) {
        const int i = n - mt_nmin;
        const bool hit =
            std::find(res.modes.begin(), res.modes.end(), n) != res.modes.end();
        csv.add_row({std::to_string(n), io::format_double(res.T[i]),
                     io::format_double(res.secular_values[i]), hit ? "1" : "0"});
      }
      json side;
      side["multiplicity"] = res.modes.size();
      emit(mt_o, csv, side);
    } else if (kn->parsed()) {
      json side;
      side["h"] = robinflow::kernel::split_point();
      const std::complex<double> nu(kn_mu / kn_o.b, 0.0);
      if (kn_s > 0) {
        const auto i0 = robinflow::kernel::eval_I_0(kn_d, nu, kn_s);
        const auto ii = robinflow::kernel::eval_I_inf(kn_d, nu, kn_s);
        side["I0"] = {i0.real(), i0.imag()};
        side["Iinf"] = {ii.real(), ii.imag()};
        side["I"] = {(i0 + ii).real(), (i0 + ii).imag()};
      }
      if (!kn_x.empty() || !kn_y.empty()) {
        robinflow::kernel::KernelParams p;
        p.b = kn_o.b;
        p.d = kn_d;
        p.mu = kn_mu;
        const auto e = robinflow::kernel::eval_E(p, kn_x, kn_y);
        side["E"] = {e.real(), e.imag()};
      }
      io::Csv csv;
      csv.columns = {"key", "re", "im"};
      for (auto it = side.begin(); it != side.end(); ++it) {
        if (it.value().is_array())
          csv.add_row({it.key(), io::format_double(it.value()[0].get<double>()),
                       io::format_double(it.value()[1].get<double>())});
        else
          csv.add_row({it.key(), io::format_double(it.value().get<double>()), "0"});
      }
      emit(kn_o, csv, side);
    } else if (bd->parsed()) {
      const RobinSymbol tau = io::robin_symbol_from_json(bd_o.tau_json);
      const auto modes =
          robinflow::boundary::boundary_modes_kernel(bd_mu, bd_o.b, bd_nmin, bd_nmax);
      io::Csv csv;
      csv.columns = {"n", "a_re", "a_im", "b_re", "b_im", "gamma_re", "gamma_im"};
      for (int n = bd_nmin; n <= bd_nmax; ++n) {
        const auto a = modes.a_of(n);
        const auto bm = modes.b_of(n);
        const auto g = 2.0 * M_PI * (modes.p_of(n) + tau(n) * a);
        csv.add_row({std::to_string(n), io::format_double(a.real()), io::format_double(a.imag()),
                     io::format_double(bm.real()), io::format_double(bm.imag()),
                     io::format_double(g.real()), io::format_double(g.imag())});
      }
      json side;
      side["mu"] = bd_mu;
      side["b"] = bd_o.b;
      emit(bd_o, csv, side);
    } else if (st->parsed()) {
      const int failures = robinflow::acceptance::run_all(std::cout);
      return failures == 0 ? 0 : 1;
    }
  } catch (const robinflow::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

#include "isac/cli_commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "isac/simulate.hpp"

namespace isac::cli {

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string join_values(const std::vector<double>& vs) {
  std::string out;
  for (double v : vs) {
    if (!out.empty()) out += ';';
    out += fmt_g(v);
  }
  return out;
}

std::string param_cell(const RegionPoint& pt) {
  if (pt.parameters.size() == 1) return fmt_g(pt.parameters.front().second);
  std::string out;
  for (const auto& [name, value] : pt.parameters) {
    if (!out.empty()) out += ';';
    out += name + "=" + fmt_g(value);
  }
  return out;
}

/// Writes to the named file, or to `fallback` when the path is empty.
int with_output(const std::string& path, std::ostream& fallback, std::ostream& err,
                const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return 0;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open '" << path << "' for writing\n";
    return 1;
  }
  body(file);
  if (!file.good()) {
    err << "error: write to '" << path << "' failed\n";
    return 1;
  }
  return 0;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

/// The closed-form sweeps bypass sweep_region, so they enforce the same
/// point cap themselves.
void check_closed_form_cap(const SweepSpec& sweep) {
  if (sweep.px_resolution > sweep.max_points)
    throw std::invalid_argument(
        "sweep of " + std::to_string(sweep.px_resolution) +
        " points exceeds max_points = " + std::to_string(sweep.max_points) +
        "; lower the resolution or raise the cap (the Pareto pass is quadratic)");
}

}  // namespace

LoadedChannel resolve_channel(const ChannelSelection& sel) {
  if (!sel.spec_path.empty()) {
    if (!sel.example.empty())
      throw std::invalid_argument("give either --example or --spec, not both");
    ChannelSpec spec = load_channel_spec(sel.spec_path);
    DistortionPair metrics = spec.metrics();
    return LoadedChannel{std::move(spec.channel), std::move(metrics),
                         "spec:" + sel.spec_path};
  }
  if (sel.example == "lemma1") {
    canonical::NoiselessParams prm{sel.q, sel.alpha};
    IsacChannel ch = canonical::bernoulli_noiseless_channel(prm);
    DistortionPair metrics = hamming_distortions(ch);
    return LoadedChannel{std::move(ch), std::move(metrics),
                         "lemma1(q=" + fmt_g(sel.q) + ", alpha=" + fmt_g(sel.alpha) + ")"};
  }
  if (sel.example == "becbsc") {
    canonical::BecBscParams prm{sel.q, sel.alpha, sel.gamma, sel.beta};
    IsacChannel ch = canonical::bec_bsc_channel(prm);
    DistortionPair metrics = hamming_distortions(ch);
    return LoadedChannel{std::move(ch), std::move(metrics),
                         "becbsc(q=" + fmt_g(sel.q) + ", alpha=" + fmt_g(sel.alpha) +
                             ", gamma=" + fmt_g(sel.gamma) + ", beta=" + fmt_g(sel.beta) +
                             ")"};
  }
  if (sel.example.empty())
    throw std::invalid_argument("no channel given: use --example lemma1|becbsc or --spec FILE");
  throw std::invalid_argument("unknown example '" + sel.example +
                              "' (available: lemma1, becbsc)");
}

int run_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    LoadedChannel loaded = resolve_channel(opt.channel);
    const IsacChannel& ch = loaded.channel;
    OrderingVerdict degraded = check_physically_degraded(ch, opt.tol);
    OrderingVerdict reverse = check_reversely_degraded(ch, opt.tol);
    MoreCapableVerdict capable =
        check_more_capable(ch, opt.resolution, opt.tol, LogBase::bits, opt.threads);

    out << "channel: " << loaded.description << "\n";
    out << "physically degraded ((Y2,S2) indep. of X given (S1,Y1)): "
        << yes_no(degraded.holds) << " (max violation " << fmt_g(degraded.max_violation)
        << ")\n";
    out << "reversely degraded ((Y1,S1) indep. of X given (S2,Y2)): "
        << yes_no(reverse.holds) << " (max violation " << fmt_g(reverse.max_violation)
        << ")\n";
    out << "more capable (I(X;Y1|S1) >= I(X;Y2|S2) on a " << opt.resolution
        << "-point-per-axis input grid): " << yes_no(capable.holds) << " (min margin "
        << fmt_g(capable.min_margin) << " bits at px=[" << join_values(capable.argmin_px)
        << "])\n";
    out << "physically_degraded=" << yes_no(degraded.holds) << "\n";
    out << "physically_degraded.max_violation=" << fmt_g(degraded.max_violation) << "\n";
    out << "reversely_degraded=" << yes_no(reverse.holds) << "\n";
    out << "reversely_degraded.max_violation=" << fmt_g(reverse.max_violation) << "\n";
    out << "more_capable=" << yes_no(capable.holds) << "\n";
    out << "more_capable.min_margin=" << fmt_g(capable.min_margin) << "\n";
    out << "more_capable.argmin_px=" << join_values(capable.argmin_px) << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_region(const RegionOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    std::vector<RegionPoint> points;
    std::vector<std::string> warnings;
    if (opt.sweep.bound == Provenance::lemma1) {
      if (opt.channel.example != "lemma1")
        throw std::invalid_argument("the lemma1 closed form only applies to --example lemma1");
      check_closed_form_cap(opt.sweep);
      points = canonical::sweep_lemma1({opt.channel.q, opt.channel.alpha},
                                       opt.sweep.px_resolution, opt.sweep.base);
    } else if (opt.sweep.bound == Provenance::lemma3) {
      if (opt.channel.example != "becbsc")
        throw std::invalid_argument("the lemma3 closed form only applies to --example becbsc");
      check_closed_form_cap(opt.sweep);
      points = canonical::sweep_lemma3(
          {opt.channel.q, opt.channel.alpha, opt.channel.gamma, opt.channel.beta},
          opt.sweep.px_resolution, opt.sweep.base);
    } else {
      LoadedChannel loaded = resolve_channel(opt.channel);
      SweepResult result = sweep_region(loaded.channel, opt.sweep, loaded.metrics);
      points = std::move(result.points);
      warnings = std::move(result.warnings);
    }
    for (const auto& w : warnings) err << "warning: " << w << "\n";
    return with_output(opt.output_path, out, err,
                       [&](std::ostream& o) { write_region_csv(o, points); });
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

Figure2Report figure2_report(const Figure2Options& opt) {
  if (opt.resolution < 3)
    throw std::invalid_argument("figure2: resolution must be >= 3");
  if (opt.lambda_count < 3)
    throw std::invalid_argument("figure2: lambda-count must be >= 3");
  canonical::NoiselessParams prm{opt.q, opt.alpha};

  Figure2Report rep;
  rep.lambda_count = opt.lambda_count;
  for (std::size_t i = 0; i < opt.resolution; ++i) {
    double p = static_cast<double>(i) / static_cast<double>(opt.resolution - 1);
    canonical::ClosedFormPoint pt = canonical::lemma1_point(prm, p);
    if (i == 0 || pt.rate > rep.rate_star) {
      rep.p_star = p;
      rep.rate_star = pt.rate;
      rep.d1_star = pt.d1;
      rep.d2_star = pt.d2;
    }
  }

  RegionPoint peak{std::nullopt, rep.rate_star, rep.d1_star, rep.d2_star,
                   Provenance::lemma1, {{"p", rep.p_star}}};
  canonical::ClosedFormPoint idle = canonical::lemma1_point(prm, 1.0);
  RegionPoint silent{std::nullopt, idle.rate, idle.d1, idle.d2, Provenance::lemma1,
                     {{"p", 1.0}}};
  std::vector<RegionPoint> baseline = separation_baseline(peak, silent, opt.lambda_count);

  bool first_interior = true;
  for (const RegionPoint& b : baseline) {
    double lambda = b.parameters.front().second;
    if (lambda <= 0.0 || lambda >= 1.0) continue;
    ++rep.interior_total;
    double p_match = 1.0 - lambda * (1.0 - rep.p_star);
    canonical::ClosedFormPoint joint = canonical::lemma1_point(prm, p_match);
    double advantage = joint.rate - b.r2_or_r;
    double mismatch = std::max(std::abs(joint.d1 - b.d1), std::abs(joint.d2 - b.d2));
    rep.max_distortion_mismatch = std::max(rep.max_distortion_mismatch, mismatch);
    if (advantage > 1e-9) ++rep.interior_dominated;
    if (first_interior || advantage > rep.max_advantage) {
      rep.max_advantage = advantage;
      rep.argmax_lambda = lambda;
      first_interior = false;
    }
  }
  return rep;
}

int run_figure2(const Figure2Options& opt, std::ostream& out, std::ostream& err) {
  try {
    Figure2Report rep = figure2_report(opt);
    canonical::NoiselessParams prm{opt.q, opt.alpha};

    if (!opt.output_stem.empty()) {
      std::vector<RegionPoint> joint;
      for (std::size_t i = 0; i < opt.resolution; ++i) {
        double p = static_cast<double>(i) / static_cast<double>(opt.resolution - 1);
        canonical::ClosedFormPoint pt = canonical::lemma1_point(prm, p);
        joint.push_back(RegionPoint{std::nullopt, pt.rate, pt.d1, pt.d2,
                                    Provenance::lemma1, {{"p", p}}});
      }
      RegionPoint peak{std::nullopt, rep.rate_star, rep.d1_star, rep.d2_star,
                       Provenance::lemma1, {{"p", rep.p_star}}};
      canonical::ClosedFormPoint idle = canonical::lemma1_point(prm, 1.0);
      RegionPoint silent{std::nullopt, idle.rate, idle.d1, idle.d2, Provenance::lemma1,
                         {{"p", 1.0}}};
      std::vector<RegionPoint> baseline =
          separation_baseline(peak, silent, opt.lambda_count);
      int rc = with_output(opt.output_stem + "_joint.csv", out, err,
                           [&](std::ostream& o) { write_region_csv(o, joint); });
      if (rc != 0) return rc;
      rc = with_output(opt.output_stem + "_separation.csv", out, err,
                       [&](std::ostream& o) { write_region_csv(o, baseline); });
      if (rc != 0) return rc;
      out << "wrote " << opt.output_stem << "_joint.csv and " << opt.output_stem
          << "_separation.csv\n";
    }

    out << "joint-design peak: p*=" << fmt_g(rep.p_star) << " rate=" << fmt_g(rep.rate_star)
        << " d1=" << fmt_g(rep.d1_star) << " d2=" << fmt_g(rep.d2_star) << " (bits)\n";
    out << "baseline points beaten at equal distortions: " << rep.interior_dominated << "/"
        << rep.interior_total << " (rate gap > 1e-9)\n";
    out << "largest rate gap: " << fmt_g(rep.max_advantage)
        << " bits at lambda=" << fmt_g(rep.argmax_lambda) << "\n";
    out << "figure2.p_star=" << fmt_g(rep.p_star) << "\n";
    out << "figure2.rate_star=" << fmt_g(rep.rate_star) << "\n";
    out << "figure2.d1_star=" << fmt_g(rep.d1_star) << "\n";
    out << "figure2.d2_star=" << fmt_g(rep.d2_star) << "\n";
    out << "figure2.interior_dominated=" << rep.interior_dominated << "\n";
    out << "figure2.interior_total=" << rep.interior_total << "\n";
    out << "figure2.max_advantage=" << fmt_g(rep.max_advantage) << "\n";
    out << "figure2.argmax_lambda=" << fmt_g(rep.argmax_lambda) << "\n";
    out << "figure2.max_distortion_mismatch=" << fmt_g(rep.max_distortion_mismatch) << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    LoadedChannel loaded = resolve_channel(opt.channel);
    const IsacChannel& ch = loaded.channel;

    std::vector<double> px = opt.px;
    if (px.empty()) {
      if (ch.x.size() != 2)
        throw std::invalid_argument(
            "-p only applies to binary inputs; give the full pmf with --px");
      if (!(opt.p >= 0.0 && opt.p <= 1.0))
        throw std::invalid_argument("-p must lie in [0, 1]");
      px = {1.0 - opt.p, opt.p};
    }

    LabeledJoint joint = assemble_joint(ch, px);
    std::vector<std::string> obs1 = opt.full_observations
                                        ? std::vector<std::string>{"X", "Y1", "Y2"}
                                        : std::vector<std::string>{"X", "Y1"};
    std::vector<std::string> obs2 = opt.full_observations
                                        ? std::vector<std::string>{"X", "Y1", "Y2"}
                                        : std::vector<std::string>{"X", "Y2"};
    Estimator est1 = optimal_estimator(joint, "S1", loaded.metrics.d1, obs1);
    Estimator est2 = optimal_estimator(joint, "S2", loaded.metrics.d2, obs2);
    double predicted1 = expected_distortion(joint, est1, loaded.metrics.d1, "S1");
    double predicted2 = expected_distortion(joint, est2, loaded.metrics.d2, "S2");

    SimConfig cfg{px, opt.n, opt.seed, opt.repetitions, opt.threads};
    SimResult res = simulate_distortion(ch, est1, est2, loaded.metrics, cfg);

    out << "channel: " << loaded.description << "\n";
    out << "estimator observations: (" << (opt.full_observations ? "X,Y1,Y2" : "X,Yj")
        << "), seed=" << opt.seed << ", " << opt.repetitions << " x " << opt.n
        << " samples\n";
    out << "generator=" << res.generator << "\n";
    out << "samples=" << res.total_samples << "\n";
    out << "d1=" << fmt_g(res.d1) << "\n";
    out << "d1.se=" << fmt_g(res.se1) << "\n";
    out << "d1.analytic=" << fmt_g(predicted1) << "\n";
    out << "d2=" << fmt_g(res.d2) << "\n";
    out << "d2.se=" << fmt_g(res.se2) << "\n";
    out << "d2.analytic=" << fmt_g(predicted2) << "\n";
    if (opt.mutual_information) {
      double plugin = plugin_mutual_information(ch, cfg, opt.base);
      double exact = mutual_information(joint, {"X"}, {"Y1"}, {"S1"}, opt.base);
      out << "mi_plugin=" << fmt_g(plugin) << "\n";
      out << "mi_exact=" << fmt_g(exact) << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_export(const ExportOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    LoadedChannel loaded = resolve_channel(opt.channel);
    std::string text = serialize_channel_spec(loaded.channel, &loaded.metrics);
    return with_output(opt.output_path, out, err, [&](std::ostream& o) { o << text; });
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

void write_region_csv(std::ostream& out, const std::vector<RegionPoint>& points) {
  out << "p_or_params,R1,R2_or_R,D1,D2,provenance\n";
  for (const RegionPoint& pt : points) {
    out << param_cell(pt) << ',';
    if (pt.r1) out << fmt_g(*pt.r1);
    out << ',' << fmt_g(pt.r2_or_r) << ',' << fmt_g(pt.d1) << ',' << fmt_g(pt.d2) << ','
        << provenance_name(pt.provenance) << '\n';
  }
}

}  // namespace isac::cli

#include "phaseret/report.hpp"

#include <chrono>
#include <sstream>

#include "phaseret/error.hpp"

namespace phaseret {

namespace {

const char* mode_name(const Input& in) { return in.is_exact() ? "exact" : "float"; }

json input_json(const Input& in) {
  json j;
  j["kind"] = in.is_family() ? "projections" : "frame";
  j["dim"] = in.dim;
  j["count"] = in.is_family() ? in.family->size() : in.frame->size();
  if (!in.source.empty()) j["source"] = in.source;
  return j;
}

json bounds_json(const FrameBounds& b, double tol) {
  return json{{"lower", b.lower},
              {"upper", b.upper},
              {"is_frame", b.is_frame(tol)},
              {"tight", b.is_tight(tol)},
              {"parseval", b.is_parseval(tol)}};
}

json stats_json(const WprSearchStats& s, const SearchBudget& b) {
  return json{{"partitions", s.partitions},
              {"decided_trivially", s.decided_trivially},
              {"decided_exactly", s.decided_exactly},
              {"sampled", s.sampled},
              {"trials_used", s.trials_used},
              {"trials", b.trials},
              {"samples", b.samples},
              {"seed", b.seed}};
}

json falsifier_json(const WprSearchResult& r, const SearchBudget& b) {
  json j;
  j["found"] = r.witness.has_value();
  j["complete"] = r.complete();
  if (r.witness) j["witness"] = weak_witness_json(*r.witness);
  if (r.partition) j["partition"] = to_json(*r.partition);
  j["stats"] = stats_json(r.stats, b);
  return j;
}

json analyze_frame(const Frame& f, const AnalysisOptions& opts) {
  const NumericConfig& cfg = opts.cfg;
  json j;
  j["frame_bounds"] = bounds_json(frame_bounds(f), cfg.tolerance);
  j["spark"] = spark(f, cfg);
  j["full_spark"] = is_full_spark(f, cfg);

  const PhaseRetrievalCertificate pr = does_phase_retrieval(f, cfg);
  j["complement_property"] = json{{"holds", pr.holds}};
  if (pr.failing) j["complement_property"]["failing_partition"] = to_json(*pr.failing);
  j["phase_retrieval"] = json{{"holds", pr.holds}, {"reason", pr.reason}};

  const NormRetrievalResult nr = does_norm_retrieval(f, cfg);
  j["norm_retrieval"] = json{{"holds", nr.holds}};
  if (nr.witness) j["norm_retrieval"]["witness"] = partition_witness_json(*nr.witness);

  const NecessaryConditionsReport nc = wpr_necessary_conditions(f, cfg);
  json ncj{{"count_ok", nc.count_ok}, {"spanning_ok", nc.spanning_ok}, {"failed", nc.failed}};
  if (nc.full_spark_ok) ncj["full_spark_ok"] = *nc.full_spark_ok;
  if (nc.witness) ncj["witness"] = weak_witness_json(*nc.witness);
  j["wpr_necessary_conditions"] = ncj;

  json wpr;
  if (f.dim() == 2 && f.size() == 2) {
    const R2Classification c = classify_wpr_r2(f[0], f[1], cfg);
    wpr["verdict"] = c.does_wpr ? "holds" : "refuted";
    wpr["method"] = "r2-classifier";
    wpr["route"] = c.route;
    if (c.witness) wpr["witness"] = weak_witness_json(*c.witness);
  } else if (pr.holds) {
    wpr["verdict"] = "holds";
    wpr["method"] = "phase-retrieval";
  } else if (nc.witness) {
    wpr["verdict"] = "refuted";
    wpr["method"] = "non-spanning";
    wpr["witness"] = weak_witness_json(*nc.witness);
  } else {
    const WprSearchResult s = wpr_falsify(f, opts.budget, cfg);
    j["falsifier"] = falsifier_json(s, opts.budget);
    if (s.witness) {
      wpr["verdict"] = "refuted";
      wpr["method"] = "falsifier";
      wpr["witness"] = weak_witness_json(*s.witness);
    } else if (nc.refuted()) {
      wpr["verdict"] = "refuted";
      wpr["method"] = "necessary-conditions";
      wpr["failed"] = nc.failed;
    } else if (s.complete()) {
      wpr["verdict"] = "holds";
      wpr["method"] = "exact-partition-scan";
    } else {
      wpr["verdict"] = "exhausted";
      wpr["method"] = "falsifier";
      wpr["stats"] = stats_json(s.stats, opts.budget);
    }
  }
  j["weak_phase_retrieval"] = wpr;
  return j;
}

json analyze_family(const ProjectionFamily& pf, const AnalysisOptions& opts) {
  const NumericConfig& cfg = opts.cfg;
  json j;
  const FusionFrame ff(pf.dim(), pf.members(), pf.weights());
  j["fusion_frame_bounds"] = bounds_json(frame_bounds(ff), cfg.tolerance);
  json ranks = json::array();
  bool all_hyperplanes = true;
  for (std::size_t i = 0; i < pf.size(); ++i) {
    ranks.push_back(pf.members()[i].dim());
    all_hyperplanes = all_hyperplanes && pf.is_hyperplane(i);
  }
  j["member_ranks"] = ranks;
  j["all_hyperplanes"] = all_hyperplanes;

  const BoundAdvisory adv = bound_advisories(pf.dim(), pf);
  j["bound_advisories"] = json{{"phase_retrieval_impossible", adv.phase_retrieval_impossible},
                               {"dimension_rule", adv.dimension_rule},
                               {"hyperplane_rule", adv.hyperplane_rule},
                               {"reasons", adv.reasons}};

  const FusionNormResult nr = fusion_norm_retrieval(pf, cfg);
  j["norm_retrieval"] = json{{"holds", nr.holds}, {"conclusive", nr.conclusive}};
  if (nr.witness) j["norm_retrieval"]["witness"] = partition_witness_json(*nr.witness);

  const ProjectionSearchResult ps = projection_pr_falsify(pf, opts.budget, cfg);
  json prj;
  if (ps.witness) {
    prj["verdict"] = "refuted";
    prj["witness"] = span_witness_json(*ps.witness);
    prj["exact"] = ps.exact;
  } else if (adv.phase_retrieval_impossible) {
    prj["verdict"] = "refuted";
    prj["failed"] = adv.reasons;
  } else {
    prj["verdict"] = "no-counterexample-found";
  }
  prj["starts"] = ps.starts;
  j["phase_retrieval"] = prj;

  // Equal measurements on the orthogonal expansion give equal projected
  // norms, so an expansion witness refutes weak phase retrieval.
  const WprSearchResult s = wpr_falsify(*nr.expansion, opts.budget, cfg);
  json wpr;
  if (s.witness) {
    wpr["verdict"] = "refuted";
    wpr["witness"] = weak_witness_json(*s.witness);
  } else {
    wpr["verdict"] = "no-counterexample-found";
  }
  wpr["stats"] = stats_json(s.stats, opts.budget);
  j["weak_phase_retrieval"] = wpr;
  return j;
}

void text_line(std::ostringstream& os, const std::string& label, const json& value) {
  os << "  " << label << ": ";
  if (value.is_string()) {
    os << value.get<std::string>();
  } else if (value.is_boolean()) {
    os << (value.get<bool>() ? "yes" : "no");
  } else {
    os << value.dump();
  }
  os << '\n';
}

}  // namespace

json weak_witness_json(const WeakWitness& w) {
  return json{{"x", to_json(w.x)},
              {"y", to_json(w.y)},
              {"construction", w.construction},
              {"verified", w.verified}};
}

json partition_witness_json(const PartitionWitness& w) {
  return json{{"partition", to_json(w.partition)},
              {"u", to_json(w.u)},
              {"v", to_json(w.v)},
              {"x", to_json(w.x)},
              {"y", to_json(w.y)},
              {"inner_uv", to_json(inner(w.u, w.v))},
              {"norm_x_squared", to_json(norm_squared(w.x))},
              {"norm_y_squared", to_json(norm_squared(w.y))}};
}

json span_witness_json(const SpanWitness& w) {
  return json{{"x", to_json(w.x)}, {"rank", w.achieved_rank}, {"span", to_json(w.spanned)}};
}

json analyze(const Input& in, const AnalysisOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  json report;
  report["input"] = input_json(in);
  report["mode"] = mode_name(in);
  report["tolerance"] = opts.cfg.tolerance;
  json body = in.is_family() ? analyze_family(*in.family, opts) : analyze_frame(*in.frame, opts);
  for (auto& [key, value] : body.items()) report[key] = value;
  const auto stop = std::chrono::steady_clock::now();
  report["timing_ms"] = std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

std::string render_text(const json& report) {
  std::ostringstream os;
  const json& input = report["input"];
  os << input["kind"].get<std::string>() << " in R^" << input["dim"].get<std::size_t>() << " with "
     << input["count"].get<std::size_t>() << " members (" << report["mode"].get<std::string>()
     << " arithmetic)\n";
  if (report.contains("frame_bounds")) {
    text_line(os, "frame", report["frame_bounds"]["is_frame"]);
    text_line(os, "tight", report["frame_bounds"]["tight"]);
    text_line(os, "spark", report["spark"]);
    text_line(os, "full spark", report["full_spark"]);
    text_line(os, "complement property", report["complement_property"]["holds"]);
  }
  if (report.contains("bound_advisories")) {
    for (const json& r : report["bound_advisories"]["reasons"])
      text_line(os, "bound", "phase retrieval impossible: " + r.get<std::string>());
  }
  if (report["phase_retrieval"].contains("holds"))
    text_line(os, "phase retrieval", report["phase_retrieval"]["holds"]);
  else
    text_line(os, "phase retrieval", report["phase_retrieval"]["verdict"]);
  text_line(os, "norm retrieval", report["norm_retrieval"]["holds"]);
  const json& wpr = report["weak_phase_retrieval"];
  std::string verdict = wpr["verdict"].get<std::string>();
  if (wpr.contains("method")) verdict += " (" + wpr["method"].get<std::string>() + ")";
  text_line(os, "weak phase retrieval", verdict);
  if (wpr.contains("witness")) {
    text_line(os, "  witness x", wpr["witness"]["x"]);
    text_line(os, "  witness y", wpr["witness"]["y"]);
  }
  return os.str();
}

json witness_command(const Input& in, const std::string& property, const AnalysisOptions& opts) {
  const NumericConfig& cfg = opts.cfg;
  json out;
  out["property"] = property;
  if (property == "wpr") {
    const Frame f = in.is_family() ? *fusion_norm_retrieval(*in.family, cfg).expansion : *in.frame;
    std::optional<WeakWitness> w;
    if (!in.is_family() && f.dim() == 2 && f.size() == 2) {
      w = classify_wpr_r2(f[0], f[1], cfg).witness;
    } else {
      w = wpr_falsify(f, opts.budget, cfg).witness;
    }
    out["found"] = w.has_value();
    if (w) {
      out["witness"] = weak_witness_json(*w);
      out["violated"] = "equal measurements but the signs are not weakly the same";
    }
  } else if (property == "norm") {
    NormRetrievalResult nr = in.is_family()
                                 ? NormRetrievalResult{false, fusion_norm_retrieval(*in.family, cfg).witness}
                                 : does_norm_retrieval(*in.frame, cfg);
    out["found"] = nr.witness.has_value();
    if (nr.witness) {
      out["witness"] = partition_witness_json(*nr.witness);
      out["violated"] = "equal measurements but different norms";
    }
  } else if (property == "phase" && !in.is_family()) {
    const Frame& f = *in.frame;
    const ComplementPropertyResult cp = has_complement_property(f, cfg);
    out["found"] = !cp.holds;
    if (cp.failing) {
      const Partition& p = *cp.failing;
      const Subspace us = orthocomplement(f.select(p.mask), f.dim(), cfg.tolerance);
      const Subspace vs = orthocomplement(f.select(p.complement_mask()), f.dim(), cfg.tolerance);
      out["witness"] = partition_witness_json(
          measurement_pair(f, p, us.basis().front(), vs.basis().front(), cfg));
      out["violated"] = "equal measurements but x is not ±y";
    }
  } else if (property == "proj-phase" || property == "phase") {
    if (!in.is_family()) throw PreconditionError("proj-phase needs a projection family input");
    const ProjectionSearchResult ps = projection_pr_falsify(*in.family, opts.budget, cfg);
    out["found"] = ps.witness.has_value();
    if (ps.witness) {
      out["witness"] = span_witness_json(*ps.witness);
      out["exact"] = ps.exact;
      out["violated"] = "span{P_i x} is not R^n";
    }
  } else {
    throw PreconditionError("unknown property '" + property + "'");
  }
  return out;
}

json falsify_command(const Input& in, const AnalysisOptions& opts) {
  const NumericConfig& cfg = opts.cfg;
  json out;
  out["input"] = input_json(in);
  if (in.is_family()) {
    const ProjectionSearchResult ps = projection_pr_falsify(*in.family, opts.budget, cfg);
    json pj{{"found", ps.witness.has_value()}, {"starts", ps.starts}, {"seed", opts.budget.seed}};
    if (ps.witness) {
      pj["witness"] = span_witness_json(*ps.witness);
      pj["exact"] = ps.exact;
    }
    out["projection_phase"] = pj;
    const Frame expansion = *fusion_norm_retrieval(*in.family, cfg).expansion;
    out["weak_phase"] = falsifier_json(wpr_falsify(expansion, opts.budget, cfg), opts.budget);
    return out;
  }
  out["weak_phase"] = falsifier_json(wpr_falsify(*in.frame, opts.budget, cfg), opts.budget);
  const NormOracleResult no = norm_retrieval_sampling_oracle(*in.frame, opts.budget, cfg);
  json nj{{"found", no.witness.has_value()}, {"trials_used", no.trials_used}};
  if (no.witness) nj["witness"] = partition_witness_json(*no.witness);
  out["norm"] = nj;
  return out;
}

}  // namespace phaseret

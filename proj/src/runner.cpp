#include "gmdet/runner.hpp"

#include <chrono>
#include <future>
#include <ostream>

#include "gmdet/irregularity.hpp"
#include "json.hpp"

namespace gmdet {

namespace {

using session::CommandStmt;
using session::Evaluator;

std::string render_column(const std::vector<CurveFunction>& f, const Names& names) {
  if (f.size() == 1) return "(" + f[0].to_string(names) + ")*dt";
  std::string s = "[";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? ", " : "") + f[i].to_string(names);
  return s + "]*dt";
}

std::string render_list(const std::vector<std::string>& items) {
  std::string s = "{";
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + items[i];
  return s + "}";
}

std::string render_form_matrix(const FormMatrix& m, const Names& names) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).to_string(names);
  }
  return s + "]";
}

std::string render_tail(const std::vector<std::pair<int, BaseScalar>>& tail, const Names& names) {
  if (tail.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : tail) {
    if (!s.empty()) s += "+";
    s += "(" + c.to_string(names) + ")*z^(" + std::to_string(k) + ")";
  }
  return s;
}

std::string render_units(const DlogBasis& b, const Names& names) {
  std::vector<std::string> u;
  for (const auto& x : b.units) u.push_back(x.to_string(names));
  return render_list(u);
}

void fill_comparison(Report& r, const Comparison& c, const Names& names) {
  r.status = to_string(c.status);
  r.residual = c.residual.to_string(names);
  for (const auto& t : c.decomposition) r.dlog_decomposition.emplace_back(t.unit.to_string(names), t.coeff.get_str());
  if (c.witness) r.witness = c.witness->to_string(names);
  switch (c.status) {
    case Status::ExactlyEqual:
    case Status::EqualModDlog:
    case Status::EqualModHalfDlog:
    case Status::EqualModRationalDlog: r.outcome = Outcome::Pass; break;
    case Status::Distinct: r.outcome = Outcome::Fail; break;
    case Status::Inconclusive: r.outcome = Outcome::Inconclusive; break;
  }
  if (c.status == Status::Distinct && !c.witness && !c.decomposition.empty()) {
    std::string w;
    for (const auto& t : c.decomposition)
      w += (w.empty() ? "" : "+") + t.coeff.get_str() + "*dlog(" + t.unit.to_string(names) + ")";
    r.witness = w;
  }
  if (!c.note.empty()) r.note = c.note;
}

struct Context {
  const Evaluator& ev;
  const RunOptions& opts;
  DeRhamOptions derham() const { return DeRhamOptions{opts.max_passes}; }
};

void run_check(const Context& ctx, const CommandStmt& cmd, const Connection& c, Report& r) {
  const Names& names = c.names;
  CheckOptions co;
  co.sum_bound = ctx.opts.sum_bound;
  co.derham = ctx.derham();
  if (cmd.section) co.section = GlobalSection{ctx.ev.eval_polynomial(*cmd.section)};
  if (ctx.opts.units) {
    std::vector<BaseScalar> u;
    for (const auto& s : *ctx.opts.units) u.push_back(ctx.ev.scalar_from_text(s));
    co.units = independent_units(u);
  }
  bool theorem = cmd.what == "theorem";
  co.mode = ctx.opts.mode;
  CheckReport rep = theorem ? check_rank1_theorem(c, co) : check_conjecture(c, co);
  if (rep.refused) {
    r.status = "Refused";
    r.outcome = Outcome::Error;
    r.note = rep.refusal;
    return;
  }
  fill_comparison(r, rep.comparison, names);
  r.value = rep.det_gm.to_string(names);
  r.chi = rep.chi;
  r.dim_h1 = rep.dim_h1;
  r.details.emplace_back("det_gm", rep.det_gm.to_string(names));
  r.details.emplace_back("rhs", rep.rhs.to_string(names));
  r.details.emplace_back("rhs_source", rep.exponential ? "newton" : "pairing");
  if (rep.exponential) {
    r.details.emplace_back("sum_bound", co.sum_bound == SumBound::MMinus1 ? "m-1" : "m-2");
    r.details.emplace_back("rhs_closed", exterior_d(rep.rhs).is_zero() ? "yes" : "no");
  }
  r.details.emplace_back("pairing", rep.pairing->total.to_string(names));
  r.details.emplace_back("section", rep.section->h.to_string(names));
  r.details.emplace_back("tau", rep.torsion.value.to_string(names));
  r.details.emplace_back("torsion_consistent", rep.torsion_consistent ? "yes" : "no");
  r.details.emplace_back("mode", to_string(rep.mode));
  r.details.emplace_back("units", render_units(rep.units, names));
}

void run_print(const Context& ctx, const CommandStmt& cmd, const Connection& c, Report& r) {
  const Names& names = c.names;
  r.status = "pass";
  const std::string& w = cmd.what;
  if (w == "euler") {
    r.chi = euler_characteristic(c);
    r.value = std::to_string(*r.chi);
  } else if (w == "curvature") {
    Curvature k = curvature(c);
    r.status = k.integrable() ? "integrable" : k.vertical() ? "vertical" : "not vertical";
    r.outcome = k.vertical() ? Outcome::Pass : Outcome::Fail;
    std::vector<std::string> parts;
    for (std::size_t j = 0; j < k.mixed.size(); ++j)
      for (std::size_t a = 0; a < c.rank; ++a)
        for (std::size_t b = 0; b < c.rank; ++b)
          if (!k.mixed[j](a, b).is_zero())
            parts.push_back("d" + names[j] + "^dt[" + std::to_string(a) + "," + std::to_string(b) +
                            "] = " + k.mixed[j](a, b).to_string(names));
    std::size_t idx = 0;
    for (std::size_t i = 0; i < c.arity; ++i)
      for (std::size_t j = i + 1; j < c.arity; ++j, ++idx)
        for (std::size_t a = 0; a < c.rank; ++a)
          for (std::size_t b = 0; b < c.rank; ++b)
            if (!k.base[idx](a, b).is_zero())
              parts.push_back("d" + names[i] + "^d" + names[j] + "[" + std::to_string(a) + "," + std::to_string(b) +
                              "] = " + k.base[idx](a, b).to_string(names));
    r.value = parts.empty() ? "0" : render_list(parts);
  } else if (w == "tau") {
    TorsionTerm tt = torsion_term(c);
    r.value = tt.value.to_string(names);
    for (const auto& u : tt.units) r.dlog_decomposition.emplace_back(u.unit.to_string(names), u.coeff.get_str());
  } else if (w == "irreg") {
    auto cls = ctx.opts.truncation ? irregularity_class(c, *ctx.opts.truncation) : irregularity_class(c);
    std::vector<std::string> parts;
    for (const auto& p : cls) parts.push_back(p.point.to_string(names) + ": " + render_tail(p.tail, names));
    r.value = render_list(parts);
  } else if (w == "pairing") {
    GlobalSection s = cmd.section ? GlobalSection{ctx.ev.eval_polynomial(*cmd.section)} : default_section(c);
    PairingValue pv = pairing_value(c, s);
    r.value = pv.total.to_string(names);
    r.details.emplace_back("section", s.h.to_string(names));
    r.details.emplace_back("main", pv.main.to_string(names));
    for (const auto& ct : pv.corrections)
      r.details.emplace_back("correction@" + ct.point.to_string(names), ct.value.to_string(names));
    r.details.emplace_back("closed", exterior_d(pv.total).is_zero() ? "yes" : "no");
  } else {
    DeRhamComplex dr(c, ctx.derham());
    if (w == "h0") {
      const H0Result& z = dr.h0();
      std::vector<std::string> b;
      for (const auto& v : z.basis) {
        auto f = dr.space().to_functions(v);
        std::string s = "[";
        for (std::size_t i = 0; i < f.size(); ++i) s += (i ? ", " : "") + f[i].to_string(names);
        b.push_back(s + "]");
      }
      r.value = std::to_string(z.dim());
      r.details.emplace_back("basis", render_list(b));
      if (z.saturated) {
        r.status = "inconclusive";
        r.outcome = Outcome::Inconclusive;
        r.note = "flat-section search reached its degree bound";
      }
    } else if (w == "h1") {
      const H1Presentation& h = dr.h1();
      std::vector<std::string> b;
      for (const auto& v : h.basis) b.push_back(render_column(dr.space().to_functions(v), names));
      r.dim_h1 = h.dim();
      r.chi = euler_characteristic(c);
      r.value = render_list(b);
      r.details.emplace_back("dim_h0", std::to_string(dr.h0().dim()));
    } else if (w == "gmdet") {
      BaseOneForm g = dr.det_gm();
      r.value = g.to_string(names);
      r.dim_h1 = dr.h1().dim();
      if (dr.h1().dim() > 0 && dr.h1().dim() <= 4)
        r.details.emplace_back("gauss_manin", render_form_matrix(dr.gauss_manin(), names));
      r.details.emplace_back("closed", exterior_d(g).is_zero() ? "yes" : "no");
    }
  }
}

Report execute(const Context& ctx, const CommandStmt& cmd) {
  Report r;
  r.command = cmd.verb + " " + cmd.what;
  r.target = cmd.target;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Connection c = ctx.ev.connection(cmd.target);
    if (cmd.verb == "check") run_check(ctx, cmd, c, r);
    else run_print(ctx, cmd, c, r);
  } catch (const InputError& e) {
    r.status = "Error";
    r.outcome = Outcome::Error;
    r.note = e.what();
  } catch (const PreconditionError& e) {
    r.status = "Refused";
    r.outcome = Outcome::Error;
    r.note = e.what();
  } catch (const TruncationError& e) {
    r.status = "Error";
    r.outcome = Outcome::Error;
    r.note = e.what();
  }
  if (ctx.opts.timing)
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

int exit_code(const std::vector<Report>& reports) {
  bool error = false, fail = false, inconclusive = false;
  for (const auto& r : reports) {
    error = error || r.outcome == Outcome::Error;
    fail = fail || r.outcome == Outcome::Fail;
    inconclusive = inconclusive || r.outcome == Outcome::Inconclusive;
  }
  return error ? 3 : fail ? 1 : inconclusive ? 2 : 0;
}

RunResult run(const session::Script& script, const RunOptions& opts) {
  Evaluator ev(script);
  Context ctx{ev, opts};
  auto cmds = script.commands();
  RunResult res;
  res.reports.resize(cmds.size());
  if (opts.parallel) {
    std::vector<std::future<Report>> jobs(cmds.size());
    for (std::size_t i = 0; i < cmds.size(); ++i)
      if (cmds[i]->verb == "check") jobs[i] = std::async(std::launch::async, [&, i] { return execute(ctx, *cmds[i]); });
    for (std::size_t i = 0; i < cmds.size(); ++i)
      res.reports[i] = jobs[i].valid() ? jobs[i].get() : execute(ctx, *cmds[i]);
  } else {
    for (std::size_t i = 0; i < cmds.size(); ++i) res.reports[i] = execute(ctx, *cmds[i]);
  }
  res.exit_code = exit_code(res.reports);
  return res;
}

std::string render_text(const Report& r) {
  std::string s = r.command + "(" + r.target + "): " + r.status + "\n";
  auto line = [&](const std::string& k, const std::string& v) { s += "  " + k + ": " + v + "\n"; };
  if (r.value) line("value", *r.value);
  if (r.residual) line("residual", *r.residual);
  if (!r.dlog_decomposition.empty()) {
    std::string d;
    for (const auto& [u, q] : r.dlog_decomposition) d += (d.empty() ? "" : " + ") + q + "*dlog(" + u + ")";
    line("dlog_decomposition", d);
  }
  if (r.witness) line("witness", *r.witness);
  if (r.chi) line("chi", std::to_string(*r.chi));
  if (r.dim_h1) line("dim_h1", std::to_string(*r.dim_h1));
  for (const auto& [k, v] : r.details) line(k, v);
  if (r.note) line("note", *r.note);
  if (r.elapsed_ms) line("elapsed_ms", std::to_string(*r.elapsed_ms));
  return s;
}

std::string render_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["target"] = r.target;
  j["status"] = r.status;
  if (r.value) j["value"] = *r.value;
  if (r.residual) j["residual"] = *r.residual;
  if (!r.dlog_decomposition.empty()) {
    j["dlog_decomposition"] = nlohmann::ordered_json::array();
    for (const auto& [u, q] : r.dlog_decomposition) j["dlog_decomposition"].push_back({{"unit", u}, {"coeff", q}});
  }
  if (r.witness) j["witness"] = *r.witness;
  if (r.chi) j["chi"] = *r.chi;
  if (r.dim_h1) j["dim_h1"] = *r.dim_h1;
  if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
  j["version"] = kVersion;
  if (r.note) j["note"] = *r.note;
  if (!r.details.empty()) {
    nlohmann::ordered_json d = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.details) d[k] = v;
    j["details"] = d;
  }
  return j.dump();
}

int run_session(const std::string& text, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  session::Script script;
  try {
    script = session::parse_session(text);
    RunResult res = run(script, opts);
    for (const auto& r : res.reports) out << (opts.json ? render_json(r) + "\n" : render_text(r));
    return res.exit_code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    if (opts.json) {
      nlohmann::ordered_json j;
      j["command"] = "parse";
      j["status"] = "Error";
      j["version"] = kVersion;
      j["note"] = e.what();
      out << j.dump() << "\n";
    }
    return 3;
  }
}

}  // namespace gmdet

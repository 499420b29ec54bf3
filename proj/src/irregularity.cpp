#include "gmdet/irregularity.hpp"

namespace gmdet {

PoleReduction pole_reduce(const LocalOneForm& w) {
  const ScalarSeries& a = w.dz;
  if (w.da) {
    const FormSeries& b = *w.da;
    int top = std::min(a.truncation() - 1, b.truncation() - 1);
    int low = std::min(a.valuation(), b.valuation() - 1);
    for (int n = low; n <= top; ++n) {
      BaseOneForm obstruction = b.coeff(n + 1) * BaseScalar(static_cast<long>(n + 1)) - d_base(a.coeff(n));
      if (!obstruction.is_zero())
        throw PreconditionError("pole_reduce: form is not closed; obstruction " + obstruction.to_string() +
                                " at z^" + std::to_string(n));
    }
    for (int n = b.valuation(); n <= b.truncation(); ++n) {
      BaseTwoForm db = exterior_d(b.coeff(n));
      if (!db.is_zero())
        throw PreconditionError("pole_reduce: form is not closed; base obstruction " +
                                db.to_string(default_names(db.arity())) + " at z^" + std::to_string(n));
    }
  }
  PoleReduction out;
  std::vector<BaseScalar> rem;
  int low = a.valuation();
  for (int k = low; k <= a.truncation(); ++k) {
    const BaseScalar& c = a.coeff(k);
    if (k <= -2) {
      if (!c.is_zero()) out.tail.emplace_back(k + 1, c / BaseScalar(static_cast<long>(k + 1)));
      rem.push_back(BaseScalar(0));
    } else {
      rem.push_back(c);
    }
  }
  out.remainder.dz = ScalarSeries(a.point(), low, std::move(rem), a.truncation(), BaseScalar(0));
  if (w.da) {
    FormSeries b = *w.da;
    std::vector<BaseOneForm> dt;
    int tlow = out.tail.empty() ? -1 : out.tail.front().first;
    for (int n = tlow; n < 0; ++n) {
      BaseOneForm x;
      for (const auto& [e, c] : out.tail)
        if (e == n) x = d_base(c);
      dt.push_back(x);
    }
    FormSeries dtail(a.point(), tlow, std::move(dt), b.truncation(), BaseOneForm());
    out.remainder.da = b - dtail;
    if (out.remainder.da->valuation() < 0)
      throw InternalError("pole_reduce: remainder has a polar da part");
  }
  return out;
}

std::vector<IrregularityAtPoint> irregularity_class(const Connection& c, int order) {
  if (c.rank != 1) throw PreconditionError("irregularity class is defined for rank 1 only");
  if (!curvature(c).vertical()) throw PreconditionError("irregularity class requires a vertical connection");
  std::vector<IrregularityAtPoint> out;
  if (order < 1) throw InputError("truncation order must be at least 1");
  for (const auto& pp : pole_profile(c).points) {
    MatrixSeries az = local_az(c, pp.point, order);
    FormMatrixSeries h = local_h(c, pp.point, order + 1);
    LocalOneForm w;
    w.dz = az.map([](const ScalarMatrix& x) { return x(0, 0); }, BaseScalar(0));
    w.da = h.map([](const FormMatrix& x) { return x(0, 0); }, BaseOneForm());
    PoleReduction red = pole_reduce(w);
    out.push_back({pp.point, pp.m, red.tail});
  }
  return out;
}

}  // namespace gmdet

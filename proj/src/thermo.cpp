#include "qcascade/thermo.hpp"

#include <cmath>
#include <sstream>

namespace qcascade {

namespace {

Matrix embed(const Matrix& op, int k, int total) {
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < total; ++i)
    out = tensor_product(out, i == k ? op : identity(2));
  return out;
}

double expectation_real(const Matrix& rho, const Matrix& op, double tol,
                        const char* what) {
  Complex v = (rho * op).trace();
  if (std::abs(v.imag()) > tol) {
    std::ostringstream os;
    os << what << ": expectation has imaginary part " << v.imag();
    throw numerical_error(os.str());
  }
  return v.real();
}

// <sigma-_p sigma+_k> + <sigma+_p sigma-_k>, an expectation of a
// Hermitian combination.
double pair_coherence(const Matrix& rho, int p, int k, int n) {
  Matrix op = embed(sigma_minus(), p, n) * embed(sigma_plus(), k, n) +
              embed(sigma_plus(), p, n) * embed(sigma_minus(), k, n);
  return expectation_real(rho, op, 1e-10, "one_way_coherence");
}

double excited_population(const Matrix& rho, int k, int n) {
  Matrix op = embed(sigma_plus(), k, n) * embed(sigma_minus(), k, n);
  return (rho * op).trace().real();
}

}  // namespace

std::string ApparentTemp::status_label() const {
  switch (status) {
    case Status::ok: return "ok";
    case Status::nonpositive_ground: return "undefined_nonpositive_ground";
    case Status::nonpositive_excited: return "undefined_nonpositive_excited";
    case Status::infinite: return "undefined_infinite";
  }
  return "unknown";
}

double subsystem_energy(const DensityMatrix& rho_S, const SpinChainSpec& spec,
                        int k) {
  if (k < 0 || k >= spec.n)
    throw validation_error("subsystem_energy: index out of range");
  int total = rho_S.num_subsystems();
  return (rho_S.matrix() * local_hamiltonian(spec, k, total).matrix())
      .trace()
      .real();
}

std::vector<double> heat_to_bath(const TrajectoryRecord& traj) {
  std::vector<double> q;
  q.reserve(traj.steps.size());
  for (const auto& s : traj.steps) q.push_back(s.bath_energy_cum);
  return q;
}

double free_energy(const DensityMatrix& rho_S, const HermitianOperator& h_S,
                   double t_ref) {
  if (!(t_ref > 0)) throw validation_error("free_energy: T_ref must be > 0");
  double e = (rho_S.matrix() * h_S.matrix()).trace().real();
  return e - t_ref * von_neumann_entropy(rho_S);
}

double mutual_information(const DensityMatrix& joint,
                          const std::vector<int>& part_a) {
  const int n = joint.num_subsystems();
  std::vector<int> part_b;
  for (int i = 0; i < n; ++i)
    if (std::find(part_a.begin(), part_a.end(), i) == part_a.end())
      part_b.push_back(i);
  if (part_a.empty() || part_b.empty())
    throw validation_error("mutual_information: cut must be nontrivial");
  double s_a = von_neumann_entropy_raw(
      partial_trace_raw(joint.matrix(), joint.dims(), part_a));
  double s_b = von_neumann_entropy_raw(
      partial_trace_raw(joint.matrix(), joint.dims(), part_b));
  return s_a + s_b - von_neumann_entropy(joint);
}

double coherence_measure(const DensityMatrix& rho_S,
                         const HermitianOperator& h_S) {
  return von_neumann_entropy(dephase(rho_S, h_S)) - von_neumann_entropy(rho_S);
}

double one_way_coherence(const DensityMatrix& rho_S, int k,
                         const std::vector<int>& order) {
  const int n = rho_S.num_subsystems();
  auto pos_of = [&](int spin) {
    for (std::size_t i = 0; i < order.size(); ++i)
      if (order[i] == spin) return static_cast<int>(i);
    throw validation_error("one_way_coherence: spin not in order");
  };
  int pos_k = pos_of(k);
  double c = 0;
  for (int p = 0; p < n; ++p)
    if (p != k && pos_of(p) < pos_k)
      c += pair_coherence(rho_S.matrix(), p, k, n);
  return c;
}

double symmetric_one_way_coherence(const DensityMatrix& rho_S, int k) {
  const int n = rho_S.num_subsystems();
  double c = 0;
  for (int l = 0; l < n; ++l)
    if (l != k) c += 0.5 * pair_coherence(rho_S.matrix(), l, k, n);
  return c;
}

ApparentTemp apparent_temperature(double p0, double p1, double c_k,
                                  double delta) {
  if (p0 + p1 > 1.0 + 1e-10)
    throw validation_error("apparent_temperature: populations exceed 1");
  double num = p0 + c_k;
  double den = p1 + c_k;
  if (num <= 0)
    return ApparentTemp::undefined(ApparentTemp::Status::nonpositive_ground);
  if (den <= 0)
    return ApparentTemp::undefined(ApparentTemp::Status::nonpositive_excited);
  double l = std::log(num / den);
  if (l == 0)
    return ApparentTemp::undefined(ApparentTemp::Status::infinite);
  return ApparentTemp::defined_value(delta / l);
}

double global_coherence_sum(const DensityMatrix& rho_S, int n) {
  double c = 0;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      c += pair_coherence(rho_S.matrix(), p, q, n);
  return c;
}

ApparentTemp global_apparent_temperature(const DensityMatrix& rho_S,
                                         const SpinChainSpec& spec) {
  double sum_p0 = 0, sum_p1 = 0;
  for (int k = 0; k < spec.n; ++k) {
    double p1 = excited_population(rho_S.matrix(), k, spec.n);
    sum_p1 += p1;
    sum_p0 += 1.0 - p1;
  }
  double c = global_coherence_sum(rho_S, spec.n);
  double num = sum_p0 + c, den = sum_p1 + c;
  if (num <= 0)
    return ApparentTemp::undefined(ApparentTemp::Status::nonpositive_ground);
  if (den <= 0)
    return ApparentTemp::undefined(ApparentTemp::Status::nonpositive_excited);
  double l = std::log(num / den);
  if (l == 0)
    return ApparentTemp::undefined(ApparentTemp::Status::infinite);
  return ApparentTemp::defined_value(spec.delta / l);
}

double reversal_threshold(double beta_k, double beta_R, double delta) {
  if (!(beta_k > 0) || !(beta_R > 0))
    throw validation_error("reversal_threshold: betas must be > 0");
  double ek = std::exp(beta_k * delta);
  double er = std::exp(beta_R * delta);
  return (ek - er) / ((ek + 1) * (er - 1));
}

namespace {

struct CollisionView {
  // Snapshot indices of one collision plus its reconstructed start.
  Matrix joint_start;            // rho_S(start) (x) fresh bath
  std::vector<std::size_t> after;  // snapshot index after sub-interaction i
};

CollisionView collision_view(const TrajectoryRecord& traj,
                             int collision_index) {
  const int spc = traj.subs_per_collision();
  const std::size_t first = 1 + static_cast<std::size_t>(collision_index) * spc;
  if (collision_index < 0 || first + spc - 1 >= traj.steps.size())
    throw validation_error("audit: collision index out of range");
  CollisionView v;
  Matrix rho_start =
      (collision_index == 0)
          ? traj.system_state(0).matrix()
          : traj.system_state(first - 1).matrix();
  Matrix bath = thermal_qubit(traj.spec.beta_bath, traj.spec.delta).matrix();
  v.joint_start = tensor_product(rho_start, bath);
  for (int i = 0; i < spc; ++i) v.after.push_back(first + i);
  return v;
}

// I(A:B) on the reduced state of A u B inside an (n+1)-factor joint.
double joint_mi(const Matrix& joint, int n, const std::vector<int>& part_a,
                const std::vector<int>& part_b) {
  const std::vector<Eigen::Index> dims(n + 1, 2);
  std::vector<int> both = part_a;
  both.insert(both.end(), part_b.begin(), part_b.end());
  std::sort(both.begin(), both.end());
  double s_a = von_neumann_entropy_raw(partial_trace_raw(joint, dims, part_a));
  double s_b = von_neumann_entropy_raw(partial_trace_raw(joint, dims, part_b));
  double s_ab = von_neumann_entropy_raw(partial_trace_raw(joint, dims, both));
  return s_a + s_b - s_ab;
}

InequalityAudit make_audit(std::string label, double lhs, double rhs) {
  double slack = lhs - rhs;
  return InequalityAudit{std::move(label), lhs, rhs, slack,
                         slack >= -kAuditSlackTol};
}

// Effective inverse temperature of the bath particle inside a joint
// state. Reduced bath states stay diagonal and full rank here, so they
// are thermal at this beta exactly.
double bath_effective_beta(const Matrix& joint, const SpinChainSpec& spec) {
  Matrix r = partial_trace_raw(joint, std::vector<Eigen::Index>(spec.n + 1, 2),
                               {spec.n});
  double p0 = r(1, 1).real();
  double p1 = r(0, 0).real();
  if (p0 <= 0 || p1 <= 0)
    throw numerical_error("audit: bath populations left (0,1)");
  return std::log(p0 / p1) / spec.delta;
}

}  // namespace

std::vector<InequalityAudit> audit_resource_chain(const TrajectoryRecord& traj,
                                                  const SpinChainSpec& spec,
                                                  int collision_index) {
  const int n = spec.n;
  CollisionView v = collision_view(traj, collision_index);
  const std::vector<Eigen::Index> joint_dims(n + 1, 2);
  std::vector<int> sys_idx(n);
  for (int k = 0; k < n; ++k) sys_idx[k] = k;

  Matrix h_S = chain_hamiltonian(spec, n).matrix();
  Matrix h_R = local_hamiltonian(spec, n, n + 1).matrix();
  const double t_R = spec.bath_temperature();
  const double beta_R = spec.beta_bath;

  auto sys_of = [&](const Matrix& joint) {
    return partial_trace_raw(joint, joint_dims, sys_idx);
  };
  auto free_energy_of = [&](const Matrix& rho_s) {
    return (rho_s * h_S).trace().real() -
           t_R * von_neumann_entropy_raw(rho_s);
  };
  auto bath_energy_of = [&](const Matrix& joint) {
    return (joint * h_R).trace().real();
  };

  std::vector<InequalityAudit> audits;
  const Matrix s_start = sys_of(v.joint_start);
  const double f_start = free_energy_of(s_start);

  if (traj.config.variant == Variant::cascade && n >= 2) {
    const Matrix& j1 = traj.steps[v.after[0]].joint.matrix();
    const Matrix& j2 = traj.steps[v.after[1]].joint.matrix();
    const int spin2 = traj.config.order[1];
    double i1_s2r = joint_mi(j1, n, {spin2}, {n});
    double i2_s2r = joint_mi(j2, n, {spin2}, {n});
    // (a) beta_R * dF~' >= I'(S2:R)
    audits.push_back(make_audit(
        "A1/FF2: beta_R dF~' >= I'(S2:R)",
        beta_R * (f_start - free_energy_of(sys_of(j1))), i1_s2r));
    // (b) dI~''(S2:R) >= (beta_2 - beta_R') dE_{R,2}, with beta_R' the
    // bath particle's effective inverse temperature going into the
    // second interaction (it left the fresh thermal state during the
    // first one; using the nominal beta_R is only the tau -> 0 limit and
    // can land on the wrong side at finite tau)
    double de_r2 = bath_energy_of(j2) - bath_energy_of(j1);
    double beta_r1 = bath_effective_beta(j1, spec);
    audits.push_back(make_audit(
        "dI: dI~''(S2:R) >= (beta_2-beta_R') dE_R2", i1_s2r - i2_s2r,
        (spec.betas[spin2] - beta_r1) * de_r2));
    if (n >= 3) {
      const Matrix& j3 = traj.steps[v.after[2]].joint.matrix();
      const int spin3 = traj.config.order[2];
      double i2_s3r = joint_mi(j2, n, {spin3}, {n});
      double i3_s3r = joint_mi(j3, n, {spin3}, {n});
      // (c) beta_R * dF~'' >= I''(S3:R)
      audits.push_back(make_audit(
          "FF4: beta_R dF~'' >= I''(S3:R)",
          beta_R * (f_start - free_energy_of(sys_of(j2))), i2_s3r));
      // (d) same with the bath reference going into the third interaction
      double de_r3 = bath_energy_of(j3) - bath_energy_of(j2);
      double beta_r2 = bath_effective_beta(j2, spec);
      audits.push_back(make_audit(
          "dI2: dI~'''(S3:R) >= (beta_3-beta_R') dE_R3", i2_s3r - i3_s3r,
          (spec.betas[spin3] - beta_r2) * de_r3));
    }
  }

  // (e) global: (beta_R - beta_S) dE_R >= dI(S:R) + dC(rho_S), single
  // collision as one unitary. Requires a common system temperature.
  bool equal_betas = true;
  for (int k = 1; k < n; ++k)
    if (std::abs(spec.betas[k] - spec.betas[0]) > 1e-12) equal_betas = false;
  if (equal_betas) {
    const Matrix& j_end = traj.steps[v.after.back()].joint.matrix();
    Matrix s_end = sys_of(j_end);
    double de_r = bath_energy_of(j_end) - bath_energy_of(v.joint_start);
    double di = joint_mi(j_end, n, sys_idx, {n}) -
                joint_mi(v.joint_start, n, sys_idx, {n});
    auto coh = [&](const Matrix& rho_s) {
      Matrix d = rho_s.diagonal().asDiagonal();
      return von_neumann_entropy_raw(d) - von_neumann_entropy_raw(rho_s);
    };
    double dc = coh(s_end) - coh(s_start);
    audits.push_back(make_audit(
        "global: (beta_R-beta_S) dE_R >= dI(S:R)+dC(rho_S)",
        (beta_R - spec.betas[0]) * de_r, di + dc));
  }
  return audits;
}

ObservableSet observables_at(const TrajectoryRecord& traj, std::size_t index) {
  const SpinChainSpec& spec = traj.spec;
  const int n = spec.n;
  const Snapshot& snap = traj.steps.at(index);
  DensityMatrix rho_S = traj.system_state(index);

  ObservableSet obs;
  obs.energy.resize(n);
  obs.one_way.resize(n);
  obs.at.resize(n);
  for (int k = 0; k < n; ++k)
    obs.energy[k] = subsystem_energy(rho_S, spec, k);
  obs.bath_energy_change = snap.bath_energy_cum;
  obs.free_energy = free_energy(rho_S, chain_hamiltonian(spec, n),
                                spec.bath_temperature());
  std::vector<int> sys_idx(n);
  for (int k = 0; k < n; ++k) sys_idx[k] = k;
  obs.mutual_information = mutual_information(snap.joint, sys_idx);
  obs.coherence = coherence_measure(rho_S, chain_hamiltonian(spec, n));
  for (int k = 0; k < n; ++k) {
    obs.one_way[k] =
        traj.config.variant == Variant::cascade
            ? one_way_coherence(rho_S, k, traj.config.order)
            : symmetric_one_way_coherence(rho_S, k);
    double p1 = excited_population(rho_S.matrix(), k, n);
    obs.at[k] = apparent_temperature(1.0 - p1, p1, obs.one_way[k], spec.delta);
  }
  obs.at_global = global_apparent_temperature(rho_S, spec);
  return obs;
}

std::vector<HeatDirectionViolation> heat_direction_violations(
    const TrajectoryRecord& traj, double guard) {
  const SpinChainSpec& spec = traj.spec;
  const double t_R = spec.bath_temperature();
  const double band = guard * spec.delta;
  std::vector<HeatDirectionViolation> out;
  if (traj.steps.size() < 2) return out;

  DensityMatrix prev = traj.system_state(0);
  for (std::size_t i = 1; i < traj.steps.size(); ++i) {
    DensityMatrix cur = traj.system_state(i);
    std::vector<int> spins;
    if (traj.config.variant == Variant::cascade)
      spins.push_back(traj.interacting_spin(i));
    else
      for (int k = 0; k < spec.n; ++k) spins.push_back(k);

    for (int k : spins) {
      double c_k = traj.config.variant == Variant::cascade
                       ? one_way_coherence(prev, k, traj.config.order)
                       : symmetric_one_way_coherence(prev, k);
      double p1 = excited_population(prev.matrix(), k, spec.n);
      ApparentTemp at = apparent_temperature(1.0 - p1, p1, c_k, spec.delta);
      if (!at.defined() || std::abs(at.value - t_R) <= band) continue;
      double de = subsystem_energy(cur, spec, k) -
                  subsystem_energy(prev, spec, k);
      if (de == 0) continue;
      bool expect_absorb = at.value < t_R;
      if ((de > 0) != expect_absorb)
        out.push_back(HeatDirectionViolation{static_cast<int>(i), k,
                                             at.value, de});
    }
    prev = std::move(cur);
  }
  return out;
}

}  // namespace qcascade

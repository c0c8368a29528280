#include "ctxbook/quantum.hpp"

#include "ctxbook/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace ctxbook {

namespace {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

bool near_zero(const Matrix& m, double tolerance) { return m.cwiseAbs().maxCoeff() <= tolerance; }

bool commute(const Matrix& a, const Matrix& b, double tolerance) { return near_zero(a * b - b * a, tolerance); }

// Bron–Kerbosch with pivoting over the commutation graph.
void cliques(std::vector<std::size_t> r, std::vector<std::size_t> p, std::vector<std::size_t> x,
             const std::vector<std::vector<bool>>& adj, std::vector<std::vector<std::size_t>>& out) {
  if (p.empty() && x.empty()) {
    std::sort(r.begin(), r.end());
    out.push_back(std::move(r));
    return;
  }
  std::size_t pivot = p.empty() ? x.front() : p.front();
  std::vector<std::size_t> candidates;
  for (std::size_t v : p) {
    if (!adj[pivot][v]) candidates.push_back(v);
  }
  for (std::size_t v : candidates) {
    std::vector<std::size_t> r2 = r, p2, x2;
    r2.push_back(v);
    for (std::size_t w : p) {
      if (adj[v][w]) p2.push_back(w);
    }
    for (std::size_t w : x) {
      if (adj[v][w]) x2.push_back(w);
    }
    cliques(std::move(r2), std::move(p2), std::move(x2), adj, out);
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

Matrix spin_projector(double theta) {
  Matrix p(2, 2);
  p << Complex(1 + std::cos(theta), 0), Complex(std::sin(theta), 0), Complex(std::sin(theta), 0),
      Complex(1 - std::cos(theta), 0);
  return p / 2.0;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void validate_experiment(const QuantumExperiment& q, double tolerance) {
  const auto n = q.state.size();
  if (n == 0) throw ValidationError("state vector is empty");
  if (std::abs(q.state.norm() - 1.0) > tolerance) {
    throw ValidationError("state is not normalized (norm " + format_double(q.state.norm()) + ")");
  }
  if (q.projectors.empty()) throw ValidationError("experiment has no projectors");
  std::set<std::string> labels;
  for (const auto& p : q.projectors) {
    if (!labels.insert(p.label).second) throw ValidationError("duplicate projector label '" + p.label + "'");
    if (p.matrix.rows() != n || p.matrix.cols() != n) {
      throw ValidationError("projector '" + p.label + "' has the wrong size");
    }
    if (!near_zero(p.matrix - p.matrix.adjoint(), tolerance)) {
      throw ValidationError("projector '" + p.label + "' is not Hermitian");
    }
    if (!near_zero(p.matrix * p.matrix - p.matrix, tolerance)) {
      throw ValidationError("projector '" + p.label + "' is not idempotent");
    }
  }
}

std::optional<Rational> snap(double value, const SnapOptions& options) {
  if (!std::isfinite(value)) return std::nullopt;
  // Best rational approximation with bounded denominator, from the exact
  // binary value of the double (continued fraction with semiconvergents).
  const Rational exact(value);
  const Integer bound(options.denominator_bound);
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = numerator(exact), d = denominator(exact);
  for (;;) {
    Integer a = n / d;
    if (n < 0 && a * d != n) a -= 1;  // floor for negatives
    const Integer q2 = q0 + a * q1;
    if (q2 > bound) break;
    const Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Integer r = n - a * d;
    n = d;
    d = r;
    if (d == 0) break;
  }
  Rational best(p1, q1);
  if (q1 != 0 && best != exact) {
    const Integer k = (bound - q0) / q1;
    const Rational semi(p0 + k * p1, q0 + k * q1);
    if (abs(semi - exact) < abs(best - exact)) best = semi;
  }
  if (std::abs(to_double(best) - value) > options.tolerance) return std::nullopt;
  return best;
}

Scenario quantum_scenario(const QuantumExperiment& q, double tolerance) {
  const std::size_t n = q.projectors.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      adj[i][j] = i != j && commute(q.projectors[i].matrix, q.projectors[j].matrix, tolerance);
    }
  }
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::vector<std::vector<std::size_t>> found;
  cliques({}, all, {}, adj, found);
  std::vector<std::string> labels;
  for (const auto& p : q.projectors) labels.push_back(p.label);
  std::vector<std::vector<std::string>> contexts;
  for (const auto& c : found) {
    std::vector<std::string> names;
    for (std::size_t i : c) names.push_back(labels[i]);
    contexts.push_back(std::move(names));
  }
  return Scenario(labels, {"0", "1"}, contexts);
}

std::vector<std::vector<double>> born_tables(const QuantumExperiment& q, const Scenario& scenario) {
  const auto dim = q.state.size();
  const Matrix identity = Matrix::Identity(dim, dim);
  std::vector<std::vector<double>> out;
  for (const auto& c : scenario.maximal_contexts()) {
    std::vector<double> table;
    for (const auto& s : sections_over(scenario, c)) {
      Eigen::VectorXcd v = q.state;
      for (std::size_t k = 0; k < c.size(); ++k) {
        const Matrix& p = q.projectors[c.indices()[k]].matrix;
        v = (s.values()[k] == 1 ? p : Matrix(identity - p)) * v;
      }
      table.push_back(q.state.dot(v).real());
    }
    out.push_back(std::move(table));
  }
  return out;
}

EmpiricalModel quantum_to_empirical(const QuantumExperiment& q, const SnapOptions& options) {
  validate_experiment(q, options.tolerance);
  const Scenario scenario = quantum_scenario(q, options.tolerance);
  const auto tables = born_tables(q, scenario);
  std::vector<Distribution> dists;
  for (std::size_t c = 0; c < tables.size(); ++c) {
    std::vector<Rational> w;
    Rational sum = 0;
    for (std::size_t t = 0; t < tables[c].size(); ++t) {
      auto r = snap(tables[c][t], options);
      if (!r) {
        throw ValidationError("no rational with denominator <= " + std::to_string(options.denominator_bound) +
                              " within " + format_double(options.tolerance) + " of " + format_double(tables[c][t]) +
                              " on {" + scenario.label(scenario.maximal_contexts()[c]) + "}");
      }
      if (*r < 0) {
        throw ValidationError("Born-rule value " + format_double(tables[c][t]) + " on {" +
                              scenario.label(scenario.maximal_contexts()[c]) + "} snaps to a negative rational");
      }
      sum += *r;
      w.push_back(*r);
    }
    if (sum != 1) {
      throw ValidationError("snapped table on {" + scenario.label(scenario.maximal_contexts()[c]) + "} sums to " +
                            to_string(sum));
    }
    dists.emplace_back(scenario, scenario.maximal_contexts()[c], std::move(w));
  }
  return EmpiricalModel(scenario, std::move(dists));
}

QuantumExperiment singlet_experiment() {
  using std::numbers::pi;
  QuantumExperiment q;
  q.name = "bell-quantum";
  q.state = Eigen::VectorXcd::Zero(4);
  q.state(1) = 1 / std::sqrt(2.0);   // |01>
  q.state(2) = -1 / std::sqrt(2.0);  // |10>
  const Matrix id = Matrix::Identity(2, 2);
  q.projectors.push_back({"a", kron(spin_projector(0), id)});
  q.projectors.push_back({"b", kron(id, spin_projector(pi))});
  q.projectors.push_back({"a'", kron(spin_projector(pi / 3), id)});
  q.projectors.push_back({"b'", kron(id, spin_projector(2 * pi / 3))});
  return q;
}

QuantumExperiment ghz_experiment() {
  QuantumExperiment q;
  q.name = "ghz-quantum";
  q.state = Eigen::VectorXcd::Zero(8);
  q.state(0) = 1 / std::sqrt(2.0);
  q.state(7) = 1 / std::sqrt(2.0);
  const Matrix id = Matrix::Identity(2, 2);
  Matrix x(2, 2), y(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  const Matrix px = (id + x) / 2.0;
  const Matrix py = (id + y) / 2.0;
  const char* parties[] = {"A", "B", "C"};
  for (int party = 0; party < 3; ++party) {
    for (const auto& [name, p] : {std::pair<const char*, const Matrix&>{"X", px}, {"Y", py}}) {
      Matrix full = party == 0 ? p : id;
      for (int other = 1; other < 3; ++other) full = kron(full, other == party ? p : id);
      q.projectors.push_back({std::string(parties[party]) + "." + name, full});
    }
  }
  return q;
}

std::vector<QuantumExperiment> quantum_catalog() { return {singlet_experiment(), ghz_experiment()}; }

QuantumExperiment quantum_entry(const std::string& name) {
  for (auto& q : quantum_catalog()) {
    if (q.name == name) return q;
  }
  throw DomainError("no quantum experiment named '" + name + "'");
}

WeakHvReport is_weak_hv_representation(const WpsRepresentation& rep, const QuantumExperiment& q,
                                       const SnapOptions& options) {
  WeakHvReport report;
  const auto& sc = rep.scenario();
  const double tol = options.tolerance;
  if (sc.num_outcomes() != 2 || sc.num_measurements() != q.projectors.size()) {
    report.mismatches.push_back("representation scenario does not match the experiment's projectors");
    return report;
  }
  std::vector<std::size_t> index;
  for (const auto& p : q.projectors) {
    try {
      index.push_back(sc.measurement_index(p.label));
    } catch (const DomainError&) {
      report.mismatches.push_back("no measurement labelled '" + p.label + "'");
      return report;
    }
  }
  auto mu_of = [&](const PointSet& s) -> std::optional<Rational> {
    auto i = rep.find(s);
    if (!i) return std::nullopt;
    return rep.mu()[*i];
  };

  // μ(E′(P)) = ⟨ψ,Pψ⟩, and {P, I − P} carries total measure 1.
  for (std::size_t i = 0; i < q.projectors.size(); ++i) {
    const auto& p = q.projectors[i];
    const double born = q.state.dot(p.matrix * q.state).real();
    const PointSet& yes = rep.transfer(index[i], 1);
    const PointSet& no = rep.transfer(index[i], 0);
    const auto m = mu_of(yes);
    if (!m) {
      report.mismatches.push_back("E′(" + p.label + ") is not a Σ-event");
      continue;
    }
    if (std::abs(to_double(*m) - born) > tol) {
      report.mismatches.push_back("μ(E′(" + p.label + ")) = " + to_string(*m) + " but <psi,P psi> = " +
                                  format_double(born));
    }
    const auto whole = mu_of(yes | no);
    const auto m0 = mu_of(no);
    if (!whole || !m0 || *whole != 1 || *m + *m0 != 1) {
      report.mismatches.push_back("{" + p.label + ", I-" + p.label + "} does not carry measure 1 additively");
    }
  }

  // Orthogonal pairs: null intersections.
  const std::size_t n = q.projectors.size();
  std::vector<std::vector<bool>> orth(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!near_zero(q.projectors[i].matrix * q.projectors[j].matrix, tol)) continue;
      orth[i][j] = orth[j][i] = true;
      const auto m = mu_of(rep.transfer(index[i], 1) & rep.transfer(index[j], 1));
      if (!m || !is_zero(*m)) {
        report.mismatches.push_back("orthogonal " + q.projectors[i].label + ", " + q.projectors[j].label +
                                    " have a non-null intersection");
      }
    }
  }

  // Maximal orthogonal families resolving the identity behave like a
  // partition of unity.
  std::vector<std::vector<std::size_t>> families;
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  cliques({}, all, {}, orth, families);
  const Matrix identity = Matrix::Identity(q.state.size(), q.state.size());
  for (const auto& f : families) {
    if (f.size() < 2) continue;
    Matrix sum = Matrix::Zero(q.state.size(), q.state.size());
    for (std::size_t i : f) sum += q.projectors[i].matrix;
    if (!near_zero(sum - identity, tol)) continue;
    PointSet u(rep.num_points());
    Rational total = 0;
    bool events = true;
    for (std::size_t i : f) {
      const PointSet& e = rep.transfer(index[i], 1);
      u |= e;
      if (auto m = mu_of(e)) {
        total += *m;
      } else {
        events = false;
      }
    }
    const auto whole = mu_of(u);
    if (!events || !whole || *whole != 1 || total != 1) {
      std::string names;
      for (std::size_t i : f) names += (names.empty() ? "" : ", ") + q.projectors[i].label;
      report.mismatches.push_back("orthogonal resolution {" + names + "} is not a partition of measure 1");
    }
  }
  return report;
}

}  // namespace ctxbook

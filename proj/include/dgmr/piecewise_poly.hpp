#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <random>
#include <vector>

#include "dgmr/polybasis.hpp"
#include "dgmr/temporal_mesh.hpp"

namespace dgmr {

/// X-valued piecewise polynomial of degree r on a temporal mesh, stored as
/// nodal coefficients: on interval n, v(t) = sum_j U^n_j phi_j((t - t_n)/tau_n)
/// and coeffs(n).col(j) = U^n_j.
///
/// The trace from before the first interval (v^{0,-}) is kept separately, as
/// is the trace after the last one (v^{N,+}); both default to zero.
class PiecewisePoly {
public:
    PiecewisePoly(TemporalMesh mesh, int degree, Eigen::Index dim);

    const TemporalMesh& mesh() const { return mesh_; }
    int degree() const { return degree_; }
    Eigen::Index dim() const { return dim_; }
    std::size_t num_intervals() const { return coeffs_.size(); }
    const ReferenceElement& element() const { return reference_element(degree_); }

    Eigen::MatrixXd& coeffs(std::size_t n) { return coeffs_[n]; }
    const Eigen::MatrixXd& coeffs(std::size_t n) const { return coeffs_[n]; }

    const Eigen::VectorXd& initial_trace() const { return initial_; }
    void set_initial_trace(Eigen::VectorXd v);
    const Eigen::VectorXd& terminal_trace() const { return terminal_; }
    void set_terminal_trace(Eigen::VectorXd v);

    /// Value (order 0) or time derivative (order 1) at local coordinate s of interval n.
    Eigen::VectorXd eval_local(std::size_t n, double s, int derivative_order = 0) const;
    /// Value at time t, interval chosen by TemporalMesh::locate.
    Eigen::VectorXd operator()(double t) const;

    /// v^{n,+}: trace at the left end of interval n.
    Eigen::VectorXd left_trace(std::size_t n) const;
    /// v^{n+1,-}: trace at the right end of interval n.
    Eigen::VectorXd right_trace(std::size_t n) const;
    /// Jump at the left end of interval n: v^{n,+} - v^{n,-}, using the
    /// initial trace for n = 0.
    Eigen::VectorXd jump(std::size_t n) const;

    PiecewisePoly& operator+=(const PiecewisePoly& other);
    PiecewisePoly& operator-=(const PiecewisePoly& other);
    PiecewisePoly& operator*=(double alpha);

    /// Coefficients and both outer traces drawn i.i.d. standard normal.
    static PiecewisePoly random(const TemporalMesh& mesh, int degree, Eigen::Index dim, std::mt19937_64& rng);

private:
    void check_compatible(const PiecewisePoly& other) const;

    TemporalMesh mesh_;
    int degree_;
    Eigen::Index dim_;
    std::vector<Eigen::MatrixXd> coeffs_;
    Eigen::VectorXd initial_;
    Eigen::VectorXd terminal_;
};

PiecewisePoly operator+(PiecewisePoly a, const PiecewisePoly& b);
PiecewisePoly operator-(PiecewisePoly a, const PiecewisePoly& b);
PiecewisePoly operator*(double alpha, PiecewisePoly a);

/// Plain-text dump: '#' header lines (degree, dim, initial trace), then per
/// interval a breakpoint pair followed by r+1 rows of dim coefficients,
/// all at 17 significant digits.
void write_solution(std::ostream& out, const PiecewisePoly& u);
PiecewisePoly read_solution(std::istream& in);

}  // namespace dgmr

#include "dgmr/piecewise_poly.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "dgmr/errors.hpp"

namespace dgmr {

PiecewisePoly::PiecewisePoly(TemporalMesh mesh, int degree, Eigen::Index dim)
    : mesh_(std::move(mesh)), degree_(degree), dim_(dim) {
    if (dim <= 0) {
        throw ConfigError("PiecewisePoly: dimension must be positive");
    }
    reference_element(degree);  // validates the degree
    coeffs_.assign(mesh_.num_intervals(), Eigen::MatrixXd::Zero(dim, degree + 1));
    initial_ = Eigen::VectorXd::Zero(dim);
    terminal_ = Eigen::VectorXd::Zero(dim);
}

void PiecewisePoly::set_initial_trace(Eigen::VectorXd v) {
    if (v.size() != dim_) {
        throw ConfigError("PiecewisePoly: initial trace has wrong dimension");
    }
    initial_ = std::move(v);
}

void PiecewisePoly::set_terminal_trace(Eigen::VectorXd v) {
    if (v.size() != dim_) {
        throw ConfigError("PiecewisePoly: terminal trace has wrong dimension");
    }
    terminal_ = std::move(v);
}

Eigen::VectorXd PiecewisePoly::eval_local(std::size_t n, double s, int derivative_order) const {
    const Eigen::VectorXd basis = element().eval(s, derivative_order);
    Eigen::VectorXd out = coeffs_[n] * basis;
    if (derivative_order == 1) {
        out /= mesh_.tau(n);
    }
    return out;
}

Eigen::VectorXd PiecewisePoly::operator()(double t) const {
    const std::size_t n = mesh_.locate(t);
    return eval_local(n, (t - mesh_.t(n)) / mesh_.tau(n));
}

Eigen::VectorXd PiecewisePoly::left_trace(std::size_t n) const { return coeffs_[n] * element().phi0(); }

Eigen::VectorXd PiecewisePoly::right_trace(std::size_t n) const { return coeffs_[n] * element().phi1(); }

Eigen::VectorXd PiecewisePoly::jump(std::size_t n) const {
    return left_trace(n) - (n == 0 ? initial_ : right_trace(n - 1));
}

void PiecewisePoly::check_compatible(const PiecewisePoly& other) const {
    if (degree_ != other.degree_ || dim_ != other.dim_ || !(mesh_ == other.mesh_)) {
        throw ConfigError("PiecewisePoly: operands live on different spaces");
    }
}

PiecewisePoly& PiecewisePoly::operator+=(const PiecewisePoly& other) {
    check_compatible(other);
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        coeffs_[n] += other.coeffs_[n];
    }
    initial_ += other.initial_;
    terminal_ += other.terminal_;
    return *this;
}

PiecewisePoly& PiecewisePoly::operator-=(const PiecewisePoly& other) {
    check_compatible(other);
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        coeffs_[n] -= other.coeffs_[n];
    }
    initial_ -= other.initial_;
    terminal_ -= other.terminal_;
    return *this;
}

PiecewisePoly& PiecewisePoly::operator*=(double alpha) {
    for (auto& c : coeffs_) {
        c *= alpha;
    }
    initial_ *= alpha;
    terminal_ *= alpha;
    return *this;
}

PiecewisePoly PiecewisePoly::random(const TemporalMesh& mesh, int degree, Eigen::Index dim, std::mt19937_64& rng) {
    PiecewisePoly out(mesh, degree, dim);
    std::normal_distribution<double> normal;
    const auto fill = [&](auto& m) {
        for (Eigen::Index k = 0; k < m.size(); ++k) {
            m.data()[k] = normal(rng);
        }
    };
    for (auto& c : out.coeffs_) {
        fill(c);
    }
    fill(out.initial_);
    fill(out.terminal_);
    return out;
}

PiecewisePoly operator+(PiecewisePoly a, const PiecewisePoly& b) { return a += b; }
PiecewisePoly operator-(PiecewisePoly a, const PiecewisePoly& b) { return a -= b; }
PiecewisePoly operator*(double alpha, PiecewisePoly a) { return a *= alpha; }

namespace {

void write_row(std::ostream& out, const Eigen::VectorXd& v) {
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        out << (k == 0 ? "" : " ") << v[k];
    }
    out << '\n';
}

Eigen::VectorXd parse_row(const std::string& line, Eigen::Index dim) {
    std::istringstream ls(line);
    Eigen::VectorXd v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        if (!(ls >> v[k])) {
            throw ConfigError("read_solution: short coefficient row '" + line + "'");
        }
    }
    return v;
}

}  // namespace

void write_solution(std::ostream& out, const PiecewisePoly& u) {
    const auto old_precision = out.precision(17);
    out << "# dgmr piecewise polynomial\n";
    out << "# degree " << u.degree() << '\n';
    out << "# dim " << u.dim() << '\n';
    out << "# intervals " << u.num_intervals() << '\n';
    out << "# initial ";
    write_row(out, u.initial_trace());
    out << "# terminal ";
    write_row(out, u.terminal_trace());
    for (std::size_t n = 0; n < u.num_intervals(); ++n) {
        out << u.mesh().t(n) << ' ' << u.mesh().t(n + 1) << '\n';
        for (int j = 0; j <= u.degree(); ++j) {
            write_row(out, u.coeffs(n).col(j));
        }
    }
    out.precision(old_precision);
}

PiecewisePoly read_solution(std::istream& in) {
    int degree = -1;
    Eigen::Index dim = 0;
    std::size_t intervals = 0;
    std::string initial_line;
    std::string terminal_line;
    std::vector<std::string> body;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line.front() != '#') {
            body.push_back(line);
            continue;
        }
        std::istringstream ls(line.substr(1));
        std::string key;
        ls >> key;
        if (key == "degree") {
            ls >> degree;
        } else if (key == "dim") {
            ls >> dim;
        } else if (key == "intervals") {
            ls >> intervals;
        } else if (key == "initial") {
            std::getline(ls, initial_line);
        } else if (key == "terminal") {
            std::getline(ls, terminal_line);
        }
    }
    if (degree < 0 || dim <= 0 || intervals == 0) {
        throw ConfigError("read_solution: missing degree/dim/intervals header");
    }
    const auto rows_per_interval = static_cast<std::size_t>(degree) + 2;
    if (body.size() != intervals * rows_per_interval) {
        throw ConfigError("read_solution: body does not match header");
    }
    std::vector<double> points{0.0};
    for (std::size_t n = 0; n < intervals; ++n) {
        std::istringstream ls(body[n * rows_per_interval]);
        double a = 0.0;
        double b = 0.0;
        if (!(ls >> a >> b)) {
            throw ConfigError("read_solution: malformed breakpoint pair");
        }
        points.push_back(b);
    }
    PiecewisePoly u(TemporalMesh(std::move(points)), degree, dim);
    for (std::size_t n = 0; n < intervals; ++n) {
        for (int j = 0; j <= degree; ++j) {
            u.coeffs(n).col(j) = parse_row(body[n * rows_per_interval + 1 + static_cast<std::size_t>(j)], dim);
        }
    }
    if (!initial_line.empty()) {
        u.set_initial_trace(parse_row(initial_line, dim));
    }
    if (!terminal_line.empty()) {
        u.set_terminal_trace(parse_row(terminal_line, dim));
    }
    return u;
}

}  // namespace dgmr

#include "swgate/numerics.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "swgate/errors.hpp"

namespace swgate {

double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ValidationError("fit_linear needs >= 2 points");
    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    double ss = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

double fit_exponent(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    lx.reserve(x.size());
    ly.reserve(y.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ValidationError("fit_exponent needs positive data");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    return fit_linear(lx, ly).slope;
}

namespace {
double simpson(const std::function<double(double)>& f, double a, double fa, double b, double fb,
               double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                double fm, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, flm);
    const double right = simpson(f, m, fm, b, fb, frm);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}
}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    if (a == b) return 0.0;
    // seed the recursion with a few panels so oscillatory integrands are not missed
    const int panels = 64;
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h, x1 = x0 + h, xm = x0 + 0.5 * h;
        const double f0 = f(x0), f1 = f(x1), fm = f(xm);
        total += adaptive(f, x0, f0, x1, f1, fm, simpson(f, x0, f0, x1, f1, fm),
                          abs_tol / panels, 40);
    }
    return total;
}

GaussHermite gauss_hermite(int n) {
    // Golub-Welsch: eigenvalues of the symmetric tridiagonal Jacobi matrix.
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double v = std::sqrt(0.5 * k);
        j(k - 1, k) = v;
        j(k, k - 1) = v;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    GaussHermite gh;
    gh.nodes.resize(n);
    gh.weights.resize(n);
    const double mu0 = std::sqrt(std::numbers::pi);
    for (int k = 0; k < n; ++k) {
        gh.nodes[k] = es.eigenvalues()(k);
        const double v0 = es.eigenvectors()(0, k);
        gh.weights[k] = mu0 * v0 * v0;
    }
    return gh;
}

double gaussian_expectation(const std::function<double(double)>& f, double sigma, int n) {
    if (sigma == 0.0) return f(0.0);
    const GaussHermite gh = gauss_hermite(n);
    double acc = 0.0;
    for (int k = 0; k < n; ++k)
        acc += gh.weights[k] * f(std::numbers::sqrt2 * sigma * gh.nodes[k]);
    return acc / std::sqrt(std::numbers::pi);
}

std::vector<double> fit_least_squares(
    const std::function<std::vector<double>(const std::vector<double>&)>& residuals,
    std::vector<double> p, int max_iter, double step_tol) {
    const int np = int(p.size());
    auto sumsq = [](const std::vector<double>& r) {
        double s = 0;
        for (double v : r) s += v * v;
        return s;
    };
    std::vector<double> r = residuals(p);
    double cost = sumsq(r);
    double lambda = 1e-6;
    for (int iter = 0; iter < max_iter; ++iter) {
        const int nr = int(r.size());
        Eigen::MatrixXd jac(nr, np);
        for (int j = 0; j < np; ++j) {
            const double h = 1e-7 * std::max(1.0, std::abs(p[j]));
            std::vector<double> pj = p;
            pj[j] += h;
            const std::vector<double> rj = residuals(pj);
            for (int i = 0; i < nr; ++i) jac(i, j) = (rj[i] - r[i]) / h;
        }
        Eigen::VectorXd rv(nr);
        for (int i = 0; i < nr; ++i) rv(i) = r[i];
        bool stepped = false;
        for (int tries = 0; tries < 20; ++tries) {
            Eigen::MatrixXd a = jac.transpose() * jac;
            a.diagonal().array() += lambda * a.diagonal().array().maxCoeff() + 1e-300;
            Eigen::VectorXd step = a.ldlt().solve(-jac.transpose() * rv);
            std::vector<double> pn = p;
            for (int j = 0; j < np; ++j) pn[j] += step(j);
            const std::vector<double> rn = residuals(pn);
            const double cn = sumsq(rn);
            if (cn <= cost) {
                const double rel = step.cwiseAbs().maxCoeff();
                p = pn; r = rn; cost = cn;
                lambda = std::max(lambda * 0.3, 1e-12);
                stepped = true;
                if (rel < step_tol) return p;
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped) throw FitError("least-squares fit diverged", std::sqrt(cost / r.size()));
    }
    return p;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace swgate

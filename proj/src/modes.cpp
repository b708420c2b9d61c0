#include "hyplab/modes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include <nlohmann/json.hpp>

#include "hyplab/csvio.hpp"

namespace hyplab {

double ModeBasis::angular(const EigenMode& mode, double theta) {
    if (mode.k == 0) return 1.0;
    double arg = 2.0 * M_PI * mode.k * theta;
    double amp = std::sqrt(2.0);
    return mode.trig == Trig::cosine ? amp * std::cos(arg) : amp * std::sin(arg);
}

ModeBasis solve_modes(const TruncatedCusp& domain, double lambda_cap, int max_modes_per_k) {
    domain.validate();
    ModeBasis basis;
    basis.domain = domain;
    int n = domain.n;
    double h = (domain.Y - domain.a) / (n + 1);
    basis.h = h;
    basis.y.resize(n);
    for (int i = 0; i < n; ++i) basis.y[i] = domain.a + h * (i + 1);

    for (int k = 0; k <= domain.k_max; ++k) {
        // A = tridiag(-1/h^2, 2/h^2 + 4 pi^2 k^2, -1/h^2), M = diag(1/y_i^2);
        // B = M^{-1/2} A M^{-1/2} has diagonal y_i^2 (2/h^2 + 4 pi^2 k^2) and
        // off-diagonal -y_i y_{i+1} / h^2.
        double kk = 4.0 * M_PI * M_PI * k * k;
        Eigen::VectorXd diag(n), sub(n - 1);
        for (int i = 0; i < n; ++i) diag[i] = basis.y[i] * basis.y[i] * (2.0 / (h * h) + kk);
        for (int i = 0; i + 1 < n; ++i) sub[i] = -basis.y[i] * basis.y[i + 1] / (h * h);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
        solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        if (solver.info() != Eigen::Success)
            throw ConvergenceFailure("tridiagonal eigensolver did not converge (k = " +
                                     std::to_string(k) + ")");

        int kept = 0;
        for (int m = 0; m < n && kept < max_modes_per_k; ++m) {
            double lam2 = solver.eigenvalues()[m];
            if (lam2 <= 0.0) continue; // Dirichlet form is positive
            double lam = std::sqrt(lam2);
            if (lam > lambda_cap) break;
            // Back-substitute f = M^{-1/2} g = y * g and normalize in the
            // weighted norm sum f_i^2 / y_i^2 h = 1.
            Eigen::VectorXd f = solver.eigenvectors().col(m);
            for (int i = 0; i < n; ++i) f[i] *= basis.y[i];
            double norm2 = 0.0;
            for (int i = 0; i < n; ++i) norm2 += f[i] * f[i] / (basis.y[i] * basis.y[i]);
            norm2 *= h;
            f /= std::sqrt(norm2);
            if (f[0] < 0.0) f = -f; // sign convention: positive near the floor

            EigenMode mode;
            mode.k = k;
            mode.m = kept + 1;
            mode.lambda = lam;
            mode.radial = f;
            mode.trig = Trig::cosine;
            basis.modes.push_back(mode);
            if (k > 0) {
                mode.trig = Trig::sine;
                basis.modes.push_back(mode);
            }
            ++kept;
        }
    }
    std::sort(basis.modes.begin(), basis.modes.end(), [](const EigenMode& a, const EigenMode& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        if (a.k != b.k) return a.k < b.k;
        return static_cast<int>(a.trig) < static_cast<int>(b.trig);
    });
    return basis;
}

void save_basis(const ModeBasis& basis, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open basis cache for writing: " + path);
    nlohmann::json hdr;
    hdr["a"] = basis.domain.a;
    hdr["Y"] = basis.domain.Y;
    hdr["n"] = basis.domain.n;
    hdr["k_max"] = basis.domain.k_max;
    out << "# " << hdr.dump() << "\n";
    out << "k,trig,m,lambda,radial...\n";
    for (const EigenMode& mode : basis.modes) {
        out << mode.k << "," << (mode.trig == Trig::cosine ? "cos" : "sin") << "," << mode.m
            << "," << CsvWriter::format_double(mode.lambda);
        for (int i = 0; i < mode.radial.size(); ++i)
            out << "," << CsvWriter::format_double(mode.radial[i]);
        out << "\n";
    }
}

ModeBasis load_basis(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open basis cache: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw ValidationError("basis cache: missing JSON header line");
    nlohmann::json hdr = nlohmann::json::parse(line.substr(2));
    TruncatedCusp domain;
    domain.a = hdr.at("a").get<double>();
    domain.Y = hdr.at("Y").get<double>();
    domain.n = hdr.at("n").get<int>();
    domain.k_max = hdr.at("k_max").get<int>();
    domain.validate();

    ModeBasis basis;
    basis.domain = domain;
    basis.h = (domain.Y - domain.a) / (domain.n + 1);
    basis.y.resize(domain.n);
    for (int i = 0; i < domain.n; ++i) basis.y[i] = domain.a + basis.h * (i + 1);

    std::getline(in, line); // column header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        EigenMode mode;
        std::getline(ss, tok, ',');
        mode.k = std::stoi(tok);
        std::getline(ss, tok, ',');
        mode.trig = (tok == "cos") ? Trig::cosine : Trig::sine;
        std::getline(ss, tok, ',');
        mode.m = std::stoi(tok);
        std::getline(ss, tok, ',');
        mode.lambda = std::stod(tok);
        std::vector<double> radial;
        radial.reserve(domain.n);
        while (std::getline(ss, tok, ',')) radial.push_back(std::stod(tok));
        if (static_cast<int>(radial.size()) != domain.n)
            throw ValidationError("basis cache: radial sample count mismatch");
        mode.radial = Eigen::Map<Eigen::VectorXd>(radial.data(), domain.n);
        basis.modes.push_back(std::move(mode));
    }
    return basis;
}

} // namespace hyplab

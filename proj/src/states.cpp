#include "spinestim/states.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

namespace spinestim {

namespace {

StateVector system_state(SpinQuantum j, Vector amp) {
    return StateVector{CompositeSpace{j.dim(), 0}, std::move(amp)};
}

void fix_phase(Vector& v) {
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12) {
            v *= std::exp(Complex(0, -std::arg(v(i))));
            return;
        }
    }
}

}  // namespace

StateVector dicke(SpinQuantum j, int two_m, Axis axis) {
    if (std::abs(two_m) > j.two_j)
        throw std::invalid_argument("dicke: |m| > j");
    if ((two_m - j.two_j) % 2 != 0)
        throw std::invalid_argument("dicke: m must differ from j by an integer");
    int k = (j.two_j - two_m) / 2;  // index of m in the j..-j ordering
    if (axis == Axis::Z) {
        Vector amp = Vector::Zero(j.dim());
        amp(k) = 1.0;
        return system_state(j, std::move(amp));
    }
    return system_state(j, eigenbasis(j, axis)[static_cast<std::size_t>(k)]);
}

StateVector css(SpinQuantum j, const Eigen::Vector3d& direction) {
    double n = direction.norm();
    if (n < 1e-12) throw std::invalid_argument("css: zero direction vector");
    Eigen::Vector3d dir = direction / n;
    SpinOps ops = make_spin_ops(j);
    Matrix jn = dir.x() * ops.x.mat + dir.y() * ops.y.mat + dir.z() * ops.z.mat;
    Eigen::SelfAdjointEigenSolver<Matrix> es(jn);
    Vector v = es.eigenvectors().col(j.dim() - 1);  // eigenvalue +j
    fix_phase(v);
    return system_state(j, std::move(v));
}

StateVector css(SpinQuantum j, Axis axis) {
    switch (axis) {
        case Axis::X: return css(j, Eigen::Vector3d(1, 0, 0));
        case Axis::Y: return css(j, Eigen::Vector3d(0, 1, 0));
        default: return css(j, Eigen::Vector3d(0, 0, 1));
    }
}

StateVector joint_optimal(SpinQuantum j, double relative_phase) {
    if (j.is_integer()) return dicke(j, 0, Axis::Z);
    // (|j,1/2>|0>_A + e^{i phase}|j,-1/2>|1>_A)/sqrt(2) on a qubit ancilla.
    CompositeSpace space{j.dim(), 2};
    Vector amp = Vector::Zero(space.total_dim());
    int k_up = (j.two_j - 1) / 2;    // m = +1/2
    int k_down = (j.two_j + 1) / 2;  // m = -1/2
    amp(k_up * 2 + 0) = 1.0 / std::sqrt(2.0);
    amp(k_down * 2 + 1) = std::exp(Complex(0, relative_phase)) / std::sqrt(2.0);
    return StateVector{space, std::move(amp)};
}

StateVector sequential_optimal(SpinQuantum j, Axis axis, double xi) {
    auto basis = eigenbasis(j, axis);
    Vector amp = (basis.front() +
                  std::exp(Complex(0, xi)) * basis.back()) /
                 std::sqrt(2.0);
    return system_state(j, std::move(amp));
}

StateVector constructive_squeezed(SpinQuantum j) {
    auto basis = eigenbasis(j, Axis::Y);
    auto at = [&](int two_m) -> const Vector& {
        return basis[static_cast<std::size_t>((j.two_j - two_m) / 2)];
    };
    if (j.is_integer()) {
        if (j.two_j < 2)
            throw std::invalid_argument(
                "constructive_squeezed: integer branch needs j >= 1");
        Vector amp = 0.5 * (at(-2) + std::sqrt(2.0) * at(0) + at(2));
        return system_state(j, std::move(amp));
    }
    Vector amp = (at(-1) + at(1)) / std::sqrt(2.0);
    return system_state(j, std::move(amp));
}

StateVector purify(const Matrix& rho, double tol) {
    if (rho.rows() != rho.cols())
        throw std::invalid_argument("purify: density matrix must be square");
    const int d = static_cast<int>(rho.rows());
    if ((rho - rho.adjoint().eval()).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("purify: density matrix not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > tol ||
        std::abs(rho.trace().imag()) > tol)
        throw std::invalid_argument("purify: trace != 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    if (es.eigenvalues().minCoeff() < -tol)
        throw std::invalid_argument("purify: density matrix not PSD");
    std::vector<int> support;
    for (int k = 0; k < d; ++k)
        if (es.eigenvalues()(k) > 1e-12) support.push_back(k);
    const int rank = static_cast<int>(support.size());
    CompositeSpace space{d, rank};
    Vector amp = Vector::Zero(space.total_dim());
    for (int a = 0; a < rank; ++a) {
        double p = es.eigenvalues()(support[static_cast<std::size_t>(a)]);
        Vector v = es.eigenvectors().col(support[static_cast<std::size_t>(a)]);
        for (int s = 0; s < d; ++s) amp(s * rank + a) += std::sqrt(p) * v(s);
    }
    amp.normalize();
    return StateVector{space, std::move(amp)};
}

Matrix partial_trace_ancilla(const StateVector& state) {
    const int d = state.space.system_dim;
    const int na = std::max(state.space.ancilla_dim, 1);
    Matrix rho = Matrix::Zero(d, d);
    for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t)
            for (int a = 0; a < na; ++a)
                rho(s, t) += state.amp(s * na + a) *
                             std::conj(state.amp(t * na + a));
    return rho;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    if (a.space.ancilla_dim != 0 || b.space.ancilla_dim != 0)
        throw std::invalid_argument("tensor: factors must have no ancilla");
    CompositeSpace space{a.space.system_dim * b.space.system_dim, 0};
    Vector amp(space.total_dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int k = 0; k < b.dim(); ++k)
            amp(i * b.dim() + k) = a.amp(i) * b.amp(k);
    return StateVector{space, std::move(amp)};
}

// ---------------------------------------------------------------------------
// State-spec parser: "kind:key=val,key=val,..."
// ---------------------------------------------------------------------------

namespace {

int parse_half_integer(const std::string& text, std::size_t pos) {
    try {
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            int num = std::stoi(text.substr(0, slash));
            int den = std::stoi(text.substr(slash + 1));
            if (den == 2) return num;
            if (den == 1) return 2 * num;
            throw ParseError("denominator must be 1 or 2", pos);
        }
        double v = std::stod(text);
        double tm = 2.0 * v;
        if (std::abs(tm - std::round(tm)) > 1e-9)
            throw ParseError("not a half-integer: " + text, pos);
        return static_cast<int>(std::round(tm));
    } catch (const std::invalid_argument&) {
        throw ParseError("bad half-integer: " + text, pos);
    }
}

Complex parse_amplitude(const std::string& tok, std::size_t pos) {
    // "re" or "re+imi" / "re-imi", e.g. "0.5", "1+2i", "-1-0.5i"
    std::string s = tok;
    if (s.empty()) throw ParseError("empty amplitude", pos);
    if (s.back() == 'i') {
        s.pop_back();
        // split at the last +/- that is not an exponent sign or leading
        std::size_t split = std::string::npos;
        for (std::size_t k = s.size(); k-- > 1;) {
            if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' &&
                s[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        try {
            if (split == std::string::npos) {
                // pure imaginary: "i", "-i", "2i"
                if (s.empty() || s == "+") return Complex(0, 1);
                if (s == "-") return Complex(0, -1);
                return Complex(0, std::stod(s));
            }
            double re = std::stod(s.substr(0, split));
            std::string im_str = s.substr(split);
            if (im_str == "+") im_str = "1";
            if (im_str == "-") im_str = "-1";
            return Complex(re, std::stod(im_str));
        } catch (const std::invalid_argument&) {
            throw ParseError("bad amplitude: " + tok, pos);
        }
    }
    try {
        return Complex(std::stod(s), 0);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad amplitude: " + tok, pos);
    }
}

std::map<std::string, std::string> parse_kv(const std::string& body,
                                            std::size_t offset) {
    std::map<std::string, std::string> kv;
    if (body.empty()) return kv;
    std::size_t start = 0;
    while (start <= body.size()) {
        auto comma = body.find(',', start);
        std::string item = body.substr(
            start, comma == std::string::npos ? std::string::npos
                                              : comma - start);
        if (!item.empty()) {
            auto eq = item.find('=');
            if (eq == std::string::npos) {
                // bare token, e.g. "css:z" -> treated as axis
                kv["_bare"] = item;
            } else {
                kv[item.substr(0, eq)] = item.substr(eq + 1);
            }
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
        (void)offset;
    }
    return kv;
}

SpinQuantum spec_j(const std::map<std::string, std::string>& kv,
                   std::optional<SpinQuantum> default_j, std::size_t pos) {
    auto it = kv.find("j");
    if (it != kv.end()) {
        try {
            return SpinQuantum::parse(it->second);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), pos);
        }
    }
    if (default_j) return *default_j;
    throw ParseError("state spec needs j= (and no default j was given)", pos);
}

double spec_double(const std::map<std::string, std::string>& kv,
                   const std::string& key, double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    return std::stod(it->second);
}

}  // namespace

StateVector parse_state_spec(const std::string& text,
                             std::optional<SpinQuantum> default_j) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError("expected 'kind:...' in state spec", 0);
    std::string kind = text.substr(0, colon);
    std::string body = text.substr(colon + 1);

    if (kind == "raw") {
        // raw:[a0,a1,...]/j=J
        if (body.empty() || body.front() != '[')
            throw ParseError("raw spec needs a bracketed amplitude list",
                             colon + 1);
        auto close = body.find(']');
        if (close == std::string::npos)
            throw ParseError("unterminated amplitude list", colon + 1);
        std::string list = body.substr(1, close - 1);
        std::vector<Complex> amps;
        std::stringstream ss(list);
        std::string tok;
        while (std::getline(ss, tok, ','))
            amps.push_back(parse_amplitude(tok, colon + 1));
        if (amps.empty()) throw ParseError("empty amplitude list", colon + 1);
        std::string rest = body.substr(close + 1);
        if (!rest.empty() && rest.front() == '/') rest = rest.substr(1);
        auto kv = parse_kv(rest, close + 1);
        SpinQuantum j = spec_j(kv, default_j, close + 1);
        if (static_cast<int>(amps.size()) != j.dim())
            throw ParseError("raw amplitude count " +
                                 std::to_string(amps.size()) +
                                 " != 2j+1 = " + std::to_string(j.dim()),
                             colon + 1);
        Vector amp(j.dim());
        for (int k = 0; k < j.dim(); ++k)
            amp(k) = amps[static_cast<std::size_t>(k)];
        double n = amp.norm();
        if (n < 1e-6)
            throw ParseError("raw amplitudes are not normalizable", colon + 1);
        amp /= n;
        return StateVector{CompositeSpace{j.dim(), 0}, std::move(amp)};
    }

    auto kv = parse_kv(body, colon + 1);
    if (kind == "dicke") {
        SpinQuantum j = spec_j(kv, default_j, colon + 1);
        auto it = kv.find("m");
        if (it == kv.end()) throw ParseError("dicke spec needs m=", colon + 1);
        int two_m = parse_half_integer(it->second, colon + 1);
        Axis axis = axis_from_string(
            kv.count("axis") ? kv.at("axis") : std::string("z"));
        return dicke(j, two_m, axis);
    }
    if (kind == "css") {
        SpinQuantum j = spec_j(kv, default_j, colon + 1);
        if (kv.count("n")) {
            // n=nx;ny;nz
            std::stringstream ss(kv.at("n"));
            std::string tok;
            std::vector<double> comp;
            while (std::getline(ss, tok, ';')) comp.push_back(std::stod(tok));
            if (comp.size() != 3)
                throw ParseError("css direction needs three components",
                                 colon + 1);
            return css(j, Eigen::Vector3d(comp[0], comp[1], comp[2]));
        }
        std::string ax = kv.count("axis") ? kv.at("axis")
                         : kv.count("_bare") ? kv.at("_bare")
                                             : std::string("z");
        return css(j, axis_from_string(ax));
    }
    if (kind == "joint") {
        SpinQuantum j = spec_j(kv, default_j, colon + 1);
        return joint_optimal(j, spec_double(kv, "phase", 0.0));
    }
    if (kind == "seq" || kind == "ghz") {
        SpinQuantum j = spec_j(kv, default_j, colon + 1);
        Axis axis = axis_from_string(
            kv.count("axis") ? kv.at("axis") : std::string("x"));
        if (axis == Axis::Z)
            throw ParseError("seq axis must be x or y", colon + 1);
        return sequential_optimal(j, axis, spec_double(kv, "xi", 0.0));
    }
    if (kind == "squeezed") {
        SpinQuantum j = spec_j(kv, default_j, colon + 1);
        return constructive_squeezed(j);
    }
    if (kind == "product") {
        SpinQuantum j = spec_j(kv, default_j, colon + 1);
        Axis axis = axis_from_string(
            kv.count("axis") ? kv.at("axis") : std::string("z"));
        StateVector one = css(j, axis);
        return tensor(one, one);
    }
    throw ParseError("unknown state kind '" + kind + "'", 0);
}

}  // namespace spinestim

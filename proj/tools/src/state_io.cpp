#include "state_io.hpp"

#include <algorithm>
#include <fstream>
#include <vector>

#include "qcm/errors.hpp"

namespace qcm::io {

namespace {

const json& field(const json& j, const char* key, const std::string& at) {
    if (!j.is_object())
        throw validation_error(at + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end())
        throw validation_error(at + "." + key + ": missing");
    return *it;
}

double as_number(const json& j, const std::string& at) {
    if (!j.is_number())
        throw validation_error(at + ": expected a number");
    return j.get<double>();
}

int as_dim(const json& j, const std::string& at) {
    if (!j.is_number_integer())
        throw validation_error(at + ": expected an integer");
    const long long v = j.get<long long>();
    if (v < 1 || v > 1024)
        throw validation_error(at + ": dimension out of range [1, 1024]");
    return static_cast<int>(v);
}

Complex as_complex(const json& j, const std::string& at) {
    if (!j.is_array() || j.size() != 2)
        throw validation_error(at + ": expected a [re, im] pair");
    return {as_number(j[0], at + "[0]"), as_number(j[1], at + "[1]")};
}

Matrix as_amplitudes(const json& j, int dim_a, int dim_b, const std::string& at) {
    if (!j.is_array())
        throw validation_error(at + ": expected an array of [re, im] pairs");
    if (static_cast<int>(j.size()) != dim_a * dim_b)
        throw validation_error(at + ": expected " + std::to_string(dim_a * dim_b) +
                               " entries, got " + std::to_string(j.size()));
    Matrix amps(dim_a, dim_b);
    for (int a = 0; a < dim_a; ++a)
        for (int b = 0; b < dim_b; ++b) {
            const int idx = a * dim_b + b;
            amps(a, b) = as_complex(j[idx], at + "[" + std::to_string(idx) + "]");
        }
    return amps;
}

} // namespace

DensityMatrix LoadedState::as_density() const {
    switch (kind) {
    case Kind::Pure: {
        const Vector v = pure->to_vector();
        Matrix m = v * v.adjoint();
        m = ((m + m.adjoint()) / 2.0).eval();
        return DensityMatrix::make(std::move(m));
    }
    case Kind::Density:
        return *density;
    case Kind::Ensemble:
        return ensemble->density();
    }
    throw validation_error("state: unknown kind");
}

PureState load_pure(const json& j, const std::string& at) {
    const int dim_a = as_dim(field(j, "dim_a", at), at + ".dim_a");
    const int dim_b = as_dim(field(j, "dim_b", at), at + ".dim_b");
    Matrix amps = as_amplitudes(field(j, "amplitudes", at), dim_a, dim_b,
                                at + ".amplitudes");
    try {
        return PureState::make(std::move(amps));
    } catch (const validation_error& e) {
        throw validation_error(at + ": " + e.what());
    }
}

LoadedState load_state(const json& j, const std::string& at) {
    const json& type = field(j, "type", at);
    if (!type.is_string())
        throw validation_error(at + ".type: expected a string");
    const std::string kind = type.get<std::string>();

    LoadedState out;
    if (kind == "pure") {
        out.kind = LoadedState::Kind::Pure;
        out.pure = load_pure(j, at);
        out.dim_a = out.pure->dim_a;
        out.dim_b = out.pure->dim_b;
    } else if (kind == "density") {
        out.kind = LoadedState::Kind::Density;
        out.dim_a = as_dim(field(j, "dim_a", at), at + ".dim_a");
        out.dim_b = as_dim(field(j, "dim_b", at), at + ".dim_b");
        const json& rows = field(j, "matrix", at);
        const int dim = out.dim_a * out.dim_b;
        if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
            throw validation_error(at + ".matrix: expected " + std::to_string(dim) +
                                   " rows");
        Matrix m(dim, dim);
        for (int r = 0; r < dim; ++r) {
            const json& row = rows[r];
            const std::string rat = at + ".matrix[" + std::to_string(r) + "]";
            if (!row.is_array() || static_cast<int>(row.size()) != dim)
                throw validation_error(rat + ": expected " + std::to_string(dim) +
                                       " entries");
            for (int c = 0; c < dim; ++c)
                m(r, c) = as_complex(row[c], rat + "[" + std::to_string(c) + "]");
        }
        try {
            out.density = DensityMatrix::make(std::move(m));
        } catch (const validation_error& e) {
            throw validation_error(at + ".matrix: " + e.what());
        }
    } else if (kind == "ensemble") {
        out.kind = LoadedState::Kind::Ensemble;
        out.dim_a = as_dim(field(j, "dim_a", at), at + ".dim_a");
        out.dim_b = as_dim(field(j, "dim_b", at), at + ".dim_b");
        const json& members = field(j, "members", at);
        if (!members.is_array() || members.empty())
            throw validation_error(at + ".members: expected a nonempty array");
        std::vector<Ensemble::Member> ms;
        for (std::size_t i = 0; i < members.size(); ++i) {
            const std::string mat = at + ".members[" + std::to_string(i) + "]";
            const double p = as_number(field(members[i], "p", mat), mat + ".p");
            Matrix amps = as_amplitudes(field(members[i], "amplitudes", mat),
                                        out.dim_a, out.dim_b, mat + ".amplitudes");
            try {
                ms.push_back({p, PureState::make(std::move(amps))});
            } catch (const validation_error& e) {
                throw validation_error(mat + ": " + e.what());
            }
        }
        try {
            out.ensemble = Ensemble::make(std::move(ms));
        } catch (const validation_error& e) {
            throw validation_error(at + ".members: " + e.what());
        }
    } else {
        throw validation_error(at + ".type: expected \"pure\", \"density\", or "
                               "\"ensemble\", got \"" + kind + "\"");
    }
    return out;
}

RealVector load_spectrum(const json& j, const std::string& at) {
    if (!j.is_array() || j.empty())
        throw validation_error(at + ": expected a nonempty array of numbers");
    RealVector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(i) = as_number(j[i], at + "[" + std::to_string(i) + "]");
        if (v(i) < 0.0)
            throw validation_error(at + "[" + std::to_string(i) +
                                   "]: probabilities must be nonnegative");
    }
    std::sort(v.data(), v.data() + v.size(), std::greater<double>());
    return v;
}

Matrix load_matrix(const json& j, const std::string& at) {
    if (!j.is_array() || j.empty())
        throw validation_error(at + ": expected a nonempty array of rows");
    const int n = static_cast<int>(j.size());
    Matrix m(n, n);
    for (int r = 0; r < n; ++r) {
        const std::string rat = at + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != n)
            throw validation_error(rat + ": expected " + std::to_string(n) +
                                   " entries (square matrix)");
        for (int c = 0; c < n; ++c)
            m(r, c) = as_complex(j[r][c], rat + "[" + std::to_string(c) + "]");
    }
    return m;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw validation_error(path + ": " + e.what());
    }
}

ojson complex_to_json(const Complex& z) {
    return ojson::array({z.real(), z.imag()});
}

ojson pure_to_json(const PureState& s) {
    ojson j;
    j["type"] = "pure";
    j["dim_a"] = s.dim_a;
    j["dim_b"] = s.dim_b;
    ojson amps = ojson::array();
    for (int a = 0; a < s.dim_a; ++a)
        for (int b = 0; b < s.dim_b; ++b)
            amps.push_back(complex_to_json(s.amps(a, b)));
    j["amplitudes"] = std::move(amps);
    return j;
}

ojson ensemble_to_json(const Ensemble& e) {
    ojson j;
    j["type"] = "ensemble";
    j["dim_a"] = e.dim_a();
    j["dim_b"] = e.dim_b();
    ojson members = ojson::array();
    for (const auto& m : e.members) {
        ojson mj;
        mj["p"] = m.p;
        ojson amps = ojson::array();
        for (int a = 0; a < m.state.dim_a; ++a)
            for (int b = 0; b < m.state.dim_b; ++b)
                amps.push_back(complex_to_json(m.state.amps(a, b)));
        mj["amplitudes"] = std::move(amps);
        members.push_back(std::move(mj));
    }
    j["members"] = std::move(members);
    return j;
}

ojson spectrum_to_json(const RealVector& v) {
    ojson arr = ojson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back(v(i));
    return arr;
}

} // namespace qcm::io

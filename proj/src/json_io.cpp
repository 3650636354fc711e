#include "stabrad/json_io.hpp"

#include <algorithm>
#include <fstream>

namespace stabrad {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(row);
    }
    return rows;
}

Matrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument(where + ": expected a non-empty array of rows");
    const int rows = static_cast<int>(j.size());
    if (!j[0].is_array() || j[0].empty())
        throw std::invalid_argument(where + ": row 0 is not a non-empty array");
    const int cols = static_cast<int>(j[0].size());
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            throw std::invalid_argument(where + ": row " + std::to_string(i) +
                                        " has inconsistent length");
        for (int c = 0; c < cols; ++c) {
            const json& e = j[i][c];
            if (e.is_number()) {
                m(i, c) = cd(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
                m(i, c) = cd(e[0].get<double>(), e[1].get<double>());
            } else {
                throw std::invalid_argument(where + ": entry (" + std::to_string(i) + "," +
                                            std::to_string(c) +
                                            ") must be a number or an [re, im] pair");
            }
        }
    }
    if (!m.all_finite()) throw std::invalid_argument(where + ": non-finite entries");
    return m;
}

json normspec_to_json(const NormSpec& n) {
    if (n.p == 1.0) return "l1";
    if (n.p == 2.0) return "l2";
    if (n.p == std::numeric_limits<double>::infinity()) return "linf";
    return json{{"p", n.p}};
}

NormSpec normspec_from_json(const json& j, const std::string& where) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "l1") return NormSpec::l1();
        if (s == "l2") return NormSpec::l2();
        if (s == "linf") return NormSpec::linf();
        throw std::invalid_argument(where + ": unknown norm \"" + s + "\"");
    }
    if (j.is_object() && j.contains("p") && j["p"].is_number()) {
        NormSpec n{j["p"].get<double>()};
        n.validate();
        return n;
    }
    throw std::invalid_argument(where + ": expected \"l1\"/\"l2\"/\"linf\" or {\"p\": value}");
}

SystemDocument parse_system_document(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("system document: expected an object");
    if (!j.contains("A")) throw std::invalid_argument("system document: missing \"A\"");
    SystemDocument doc;
    doc.lti.A = matrix_from_json(j["A"], "A");
    const int n = doc.lti.A.rows();
    if (!doc.lti.A.is_square()) throw std::invalid_argument("A: must be square");
    doc.lti.B = j.contains("B") ? matrix_from_json(j["B"], "B") : Matrix::identity(n);
    doc.lti.C = j.contains("C") ? matrix_from_json(j["C"], "C") : Matrix::identity(n);
    if (doc.lti.B.rows() != n)
        throw std::invalid_argument("B: has " + std::to_string(doc.lti.B.rows()) +
                                    " rows, expected " + std::to_string(n));
    if (doc.lti.C.cols() != n)
        throw std::invalid_argument("C: has " + std::to_string(doc.lti.C.cols()) +
                                    " columns, expected " + std::to_string(n));
    doc.lti.norm_X =
        j.contains("norm_X") ? normspec_from_json(j["norm_X"], "norm_X") : NormSpec::l2();
    doc.lti.norm_U =
        j.contains("norm_U") ? normspec_from_json(j["norm_U"], "norm_U") : doc.lti.norm_X;
    doc.lti.norm_Y =
        j.contains("norm_Y") ? normspec_from_json(j["norm_Y"], "norm_Y") : doc.lti.norm_X;
    doc.lti.validate();
    if (j.contains("time_varying")) doc.time_varying = j["time_varying"];
    return doc;
}

json serialize_system_document(const SystemDocument& doc) {
    json j;
    j["A"] = matrix_to_json(doc.lti.A);
    j["B"] = matrix_to_json(doc.lti.B);
    j["C"] = matrix_to_json(doc.lti.C);
    j["norm_X"] = normspec_to_json(doc.lti.norm_X);
    j["norm_U"] = normspec_to_json(doc.lti.norm_U);
    j["norm_Y"] = normspec_to_json(doc.lti.norm_Y);
    if (!doc.time_varying.is_null()) j["time_varying"] = doc.time_varying;
    return j;
}

TimeVaryingSystem SystemDocument::make_time_varying(double step) const {
    NormSpec nx = lti.norm_X;
    if (!has_time_varying()) {
        auto sys = TimeVaryingSystem::unstructured(EvolutionFamily::constant(lti.A, step), nx);
        Matrix b = lti.B, c = lti.C;
        sys.B = [b](double) { return b; };
        sys.C = [c](double) { return c; };
        sys.norm_U = lti.norm_U;
        sys.norm_Y = lti.norm_Y;
        return sys;
    }
    const json& tv = time_varying;
    if (!tv.is_object() || !tv.contains("kind"))
        throw std::invalid_argument("time_varying: expected an object with \"kind\"");
    std::string kind = tv["kind"].get<std::string>();
    if (tv.contains("step")) step = tv["step"].get<double>();

    EvolutionFamily fam = [&]() -> EvolutionFamily {
        if (kind == "constant") return EvolutionFamily::constant(lti.A, step);
        if (kind == "hale") {
            double a = tv.contains("a") ? tv["a"].get<double>() : 1.5;
            return EvolutionFamily::hale(a, step);
        }
        if (kind == "tabulated") {
            if (!tv.contains("samples") || !tv["samples"].is_array() || tv["samples"].empty())
                throw std::invalid_argument("time_varying: tabulated kind needs \"samples\"");
            std::vector<std::pair<double, Matrix>> samples;
            for (const auto& s : tv["samples"]) {
                if (!s.contains("t") || !s.contains("A"))
                    throw std::invalid_argument("time_varying: sample needs \"t\" and \"A\"");
                samples.emplace_back(s["t"].get<double>(),
                                     matrix_from_json(s["A"], "time_varying sample A"));
            }
            std::sort(samples.begin(), samples.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            int dim = samples.front().second.rows();
            // Linear interpolation between samples, clamped at the ends.
            auto gen = [samples](double t) {
                if (t <= samples.front().first) return samples.front().second;
                if (t >= samples.back().first) return samples.back().second;
                size_t i = 1;
                while (samples[i].first < t) ++i;
                double w = (t - samples[i - 1].first) /
                           (samples[i].first - samples[i - 1].first);
                return samples[i - 1].second * cd(1.0 - w) + samples[i].second * cd(w);
            };
            return EvolutionFamily(gen, dim, step);
        }
        throw std::invalid_argument("time_varying: unknown kind \"" + kind + "\"");
    }();

    if (fam.dim() != lti.B.rows() || fam.dim() != lti.C.cols())
        throw std::invalid_argument("time_varying: B/C dimension mismatch with the family");
    auto sys = TimeVaryingSystem::unstructured(std::move(fam), nx);
    Matrix b = lti.B, c = lti.C;
    sys.B = [b](double) { return b; };
    sys.C = [c](double) { return c; };
    sys.norm_U = lti.norm_U;
    sys.norm_Y = lti.norm_Y;
    return sys;
}

SystemDocument load_system_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open system file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return parse_system_document(j);
}

}  // namespace stabrad

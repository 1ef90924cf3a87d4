#include "hecke/cache.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace hecke {

namespace {

using nlohmann::json;

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }
cplx from_cjson(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json mat_json(const CMat& m)
{
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(cjson(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

CMat mat_from(const json& j)
{
    CMat m(j.size(), j.at(0).size());
    for (int i = 0; i < m.rows(); ++i)
        for (int k = 0; k < m.cols(); ++k) m(i, k) = from_cjson(j.at(i).at(k));
    return m;
}

json vec_json(const CVec& v)
{
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(cjson(v(i)));
    return a;
}

CVec vec_from(const json& j)
{
    CVec v(j.size());
    for (int i = 0; i < v.size(); ++i) v(i) = from_cjson(j.at(i));
    return v;
}

} // namespace

void store_periods(const PeriodData& pd, const std::string& path)
{
    json j;
    json bp = json::array();
    for (cplx z : pd.spec.branch_points) bp.push_back(cjson(z));
    j["spec"] = {{"branch_points", bp}};
    j["settings"] = {{"quad_tol", pd.settings.quad_tol}, {"loop_vertices", pd.settings.loop_vertices}};
    j["a_periods"] = mat_json(pd.a_periods);
    j["b_periods"] = mat_json(pd.b_periods);
    j["normalization"] = mat_json(pd.normalization);
    j["tau"] = mat_json(pd.tau);
    j["kappa0"] = vec_json(pd.kappa0);
    j["abel_e1"] = vec_json(pd.abel_e1);
    json orient = json::array();
    for (const auto& L : pd.b_loops) orient.push_back(L.sign);
    j["b_orientation"] = orient;
    j["base_point"] = {{"x", cjson(pd.x0)}, {"y", cjson(pd.y0)}};
    j["hash"] = curve_hash(pd.spec, pd.settings);
    // write then rename so readers never see a partial file
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp);
        if (!f) throw Error(ErrorCode::NotFound, "cannot write " + tmp);
        f << j.dump(1) << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(ErrorCode::NotFound, "cannot move cache into " + path);
}

PeriodData load_periods(const std::string& path, const CurveSpec& spec, const PeriodSettings& s)
{
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::NotFound, "no cache at " + path);
    json j = json::parse(f);
    std::string want = curve_hash(spec, s);
    if (j.at("hash").get<std::string>() != want)
        throw Error(ErrorCode::HashMismatch, "cache hash " + j.at("hash").get<std::string>() + " != " + want);
    PeriodData pd = build_geometry(spec, s);
    pd.a_periods = mat_from(j.at("a_periods"));
    pd.b_periods = mat_from(j.at("b_periods"));
    pd.normalization = mat_from(j.at("normalization"));
    pd.tau = mat_from(j.at("tau"));
    pd.kappa0 = vec_from(j.at("kappa0"));
    pd.abel_e1 = vec_from(j.at("abel_e1"));
    const auto& orient = j.at("b_orientation");
    for (size_t a = 0; a < pd.b_loops.size(); ++a) pd.b_loops[a].sign = orient.at(a).get<int>();
    pd.x0 = from_cjson(j.at("base_point").at("x"));
    pd.y0 = from_cjson(j.at("base_point").at("y"));
    return pd;
}

} // namespace hecke

#include "k3lat/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace k3lat {

namespace {

[[noreturn]] void structural(const std::string& what, const std::string& path) { throw ParseError(what, 0, 0, path); }

const Json& member(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) structural("expected an object", path);
    auto it = j.find(key);
    if (it == j.end()) structural(std::string("missing \"") + key + "\"", path);
    return *it;
}

bool is_decimal(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

std::string idx(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

}  // namespace

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // byte is the 1-based offset of the offending character
        std::size_t line = 1, col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        const auto pos = msg.find("syntax error");
        throw ParseError(pos == std::string::npos ? msg : msg.substr(pos), line, col);
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io-error", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

Json to_json(const Int& x) {
    if (x >= Int(std::numeric_limits<long long>::min()) && x <= Int(std::numeric_limits<long long>::max()))
        return Json(static_cast<long long>(x));
    return Json(x.str());
}

Json to_json(const Rat& x) {
    if (mp::denominator(x) == 1) return to_json(Int(mp::numerator(x)));
    return Json(Int(mp::numerator(x)).str() + "/" + Int(mp::denominator(x)).str());
}

Json to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(to_json(Int(m(i, j))));
        rows.push_back(std::move(r));
    }
    return rows;
}

Json to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(to_json(Rat(m(i, j))));
        rows.push_back(std::move(r));
    }
    return rows;
}

Json to_json(const IntVector& v) {
    Json r = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) r.push_back(to_json(Int(v(i))));
    return r;
}

Int int_from_json(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (is_decimal(s)) return Int(s[0] == '+' ? s.substr(1) : s);
    }
    structural("expected a decimal integer", path);
}

Rat rat_from_json(const Json& j, const std::string& path) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        if (slash == std::string::npos) {
            if (is_decimal(s)) return Rat(Int(s[0] == '+' ? s.substr(1) : s));
        } else {
            const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
            if (is_decimal(a) && is_decimal(b) && b[0] != '-' && b[0] != '+') {
                Int den(b);
                if (den == 0) structural("zero denominator", path);
                return Rat(Int(a[0] == '+' ? a.substr(1) : a), den);
            }
        }
        structural("expected a fraction \"a/b\"", path);
    }
    return Rat(int_from_json(j, path));
}

namespace {

template <class Mat, class F>
Mat matrix_from_json(const Json& j, const std::string& path, F entry) {
    if (!j.is_array()) structural("expected an array of rows", path);
    const auto rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = -1;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array()) structural("expected a row array", idx(path, i));
        if (cols < 0) cols = static_cast<Eigen::Index>(j[i].size());
        else if (static_cast<Eigen::Index>(j[i].size()) != cols) structural("ragged rows", idx(path, i));
    }
    Mat m(rows, std::max<Eigen::Index>(cols, 0));
    for (std::size_t i = 0; i < j.size(); ++i)
        for (std::size_t k = 0; k < j[i].size(); ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = entry(j[i][k], idx(idx(path, i), k));
    return m;
}

}  // namespace

IntMatrix int_matrix_from_json(const Json& j, const std::string& path) {
    return matrix_from_json<IntMatrix>(j, path, [](const Json& e, const std::string& p) { return int_from_json(e, p); });
}

RatMatrix rat_matrix_from_json(const Json& j, const std::string& path) {
    return matrix_from_json<RatMatrix>(j, path, [](const Json& e, const std::string& p) { return rat_from_json(e, p); });
}

Json lattice_to_json(const Lattice& l) {
    Json j;
    j["rank"] = l.rank();
    j["gram"] = to_json(l.gram());
    return j;
}

namespace {

Lattice lattice_at(const Json& j, const std::string& at) {
    const Int rank = int_from_json(member(j, "rank", at), at + "/rank");
    IntMatrix g = int_matrix_from_json(member(j, "gram", at), at + "/gram");
    if (g.rows() != g.cols() || Int(g.rows()) != rank) structural("gram must be rank x rank", at + "/gram");
    if (g != IntMatrix(g.transpose())) structural("gram is not symmetric", at + "/gram");
    return Lattice(std::move(g), true);
}

}  // namespace

Lattice lattice_from_json(const Json& j) { return lattice_at(j, ""); }

Json sublattice_to_json(const Sublattice& s) {
    Json j = lattice_to_json(s.ambient());
    j["basis"] = to_json(s.basis());
    return j;
}

Sublattice sublattice_from_json(const Json& j) {
    Lattice l = lattice_from_json(j);
    IntMatrix b = int_matrix_from_json(member(j, "basis", ""), "/basis");
    if (b.rows() > 0 && b.cols() != l.rank()) structural("basis rows must have ambient rank entries", "/basis");
    if (b.rows() == 0) b = IntMatrix(0, l.rank());
    try {
        return Sublattice(l, b);
    } catch (const Error& e) {
        structural(e.what(), "/basis");
    }
}

Json named_lattice_to_json(const NamedLattice& l) {
    Json j;
    j["name"] = l.name;
    j["rank"] = l.lattice.rank();
    j["gram"] = to_json(l.lattice.gram());
    Json d = Json::object();
    for (const auto& [k, v] : l.distinguished) d[k] = to_json(v);
    j["distinguished"] = d;
    return j;
}

NamedLattice named_lattice_from_json(const Json& j) {
    NamedLattice n;
    const Json& name = member(j, "name", "");
    if (!name.is_string()) structural("expected a string", "/name");
    n.name = name.get<std::string>();
    n.lattice = lattice_from_json(j);
    const Json& d = member(j, "distinguished", "");
    if (!d.is_object()) structural("expected an object", "/distinguished");
    for (auto it = d.begin(); it != d.end(); ++it) {
        const std::string p = "/distinguished/" + it.key();
        if (!it.value().is_array()) structural("expected an array", p);
        IntVector v(static_cast<Eigen::Index>(it.value().size()));
        for (std::size_t i = 0; i < it.value().size(); ++i) v(static_cast<Eigen::Index>(i)) = int_from_json(it.value()[i], idx(p, i));
        if (v.size() != n.lattice.rank()) structural("vector length differs from rank", p);
        n.distinguished[it.key()] = v;
    }
    return n;
}

Json isotypic_to_json(const IsotypicData& d) {
    Json j;
    j["projectors"] = Json::array();
    for (const auto& p : d.projectors) j["projectors"].push_back(to_json(p));
    return j;
}

IsotypicData isotypic_from_json(const Json& j) {
    const Json& ps = member(j, "projectors", "");
    if (!ps.is_array()) structural("expected an array", "/projectors");
    IsotypicData d;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        RatMatrix m = rat_matrix_from_json(ps[i], idx("/projectors", i));
        if (m.rows() != m.cols()) structural("projector is not square", idx("/projectors", i));
        d.projectors.push_back(std::move(m));
    }
    return d;
}

Json group_to_json(const IsometryGroup& g, const std::optional<IsotypicData>& iso) {
    Json j;
    j["ambient"] = lattice_to_json(g.ambient());
    j["generators"] = Json::array();
    for (const auto& m : g.generators()) j["generators"].push_back(to_json(m));
    if (iso) j["isotypic"] = isotypic_to_json(*iso);
    return j;
}

GroupFile group_from_json(const Json& j) {
    const Lattice amb = lattice_at(member(j, "ambient", ""), "/ambient");
    const Json& gens = member(j, "generators", "");
    if (!gens.is_array()) structural("expected an array", "/generators");
    std::vector<IntMatrix> ms;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        IntMatrix m = int_matrix_from_json(gens[i], idx("/generators", i));
        if (m.rows() != amb.rank() || m.cols() != amb.rank()) structural("generator must be rank x rank", idx("/generators", i));
        ms.push_back(std::move(m));
    }
    GroupFile f{IsometryGroup(amb, ms), std::nullopt};
    if (j.contains("isotypic")) f.isotypic = isotypic_from_json(j["isotypic"]);
    return f;
}

}  // namespace k3lat

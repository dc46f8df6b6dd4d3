#include "mackey/serialize.hpp"

#include "mackey/catalog.hpp"
#include "mackey/errors.hpp"

#include <sstream>

namespace mackey {

namespace {
using Index = Eigen::Index;

Integer parse_integer(const Json& v, const std::string& path) {
    try {
        if (v.is_string()) return Integer(v.get<std::string>());
        if (v.is_number_integer()) return Integer(v.get<long long>());
    } catch (const std::exception&) {
    }
    throw ValidationError(path + ": expected an integer (string or number)");
}

const Json& field(const Json& j, const char* name, const std::string& path) {
    if (!j.is_object() || !j.contains(name)) throw ValidationError(path + ": missing field '" + name + "'");
    return j.at(name);
}

std::string group_label(const FgAbGroup& g) { return g.canonical().to_string(); }
}  // namespace

Json matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

IntMatrix matrix_from_json(const Json& j, int rows, int cols, const std::string& path) {
    if (!j.is_array()) throw ValidationError(path + ": expected an array of rows");
    if (static_cast<int>(j.size()) != rows)
        throw ValidationError(path + ": expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& row = j[i];
        const std::string rp = path + "[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ValidationError(rp + ": expected a row of " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) m(i, c) = parse_integer(row[c], rp + "[" + std::to_string(c) + "]");
    }
    return m;
}

Json to_json(const MackeyFunctor& m) {
    Json j;
    j["schema"] = kSchema;
    j["p"] = m.shape.p;
    j["n"] = m.shape.n;
    Json levels = Json::array();
    for (const auto& l : m.level) {
        Json orders = Json::array();
        for (const auto& o : l.orders()) orders.push_back(o.str());
        levels.push_back(Json{{"orders", orders}});
    }
    j["levels"] = levels;
    Json res = Json::array(), tr = Json::array(), weyl = Json::array();
    for (const auto& r : m.res) res.push_back(matrix_to_json(r));
    for (const auto& t : m.tr) tr.push_back(matrix_to_json(t));
    for (const auto& w : m.weyl) weyl.push_back(matrix_to_json(w));
    j["res"] = res;
    j["tr"] = tr;
    j["weyl"] = weyl;
    return j;
}

MackeyFunctor from_json(const Json& j) {
    if (!j.is_object()) throw ValidationError("$: expected an object");
    if (j.contains("schema") && j["schema"] != kSchema)
        throw ValidationError("$.schema: unsupported schema " + j["schema"].dump());
    MackeyFunctor m;
    const Json& p = field(j, "p", "$");
    const Json& n = field(j, "n", "$");
    if (!p.is_number_integer()) throw ValidationError("$.p: expected an integer");
    if (!n.is_number_integer()) throw ValidationError("$.n: expected an integer");
    m.shape = TowerShape{p.get<int>(), n.get<int>()};
    try {
        m.shape.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("$: ") + e.what());
    }
    const int nn = m.shape.n;
    const Json& levels = field(j, "levels", "$");
    if (!levels.is_array() || static_cast<int>(levels.size()) != nn + 1)
        throw ValidationError("$.levels: expected " + std::to_string(nn + 1) + " levels");
    for (int k = 0; k <= nn; ++k) {
        const std::string lp = "$.levels[" + std::to_string(k) + "]";
        const Json& orders = field(levels[k], "orders", lp);
        if (!orders.is_array()) throw ValidationError(lp + ".orders: expected an array");
        std::vector<Integer> o;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            Integer v = parse_integer(orders[i], lp + ".orders[" + std::to_string(i) + "]");
            if (v < 0) throw ValidationError(lp + ".orders[" + std::to_string(i) + "]: negative order");
            o.push_back(v);
        }
        m.level.push_back(FgAbGroup(o));
    }
    auto read_list = [&](const char* name, int count, auto dims) {
        const Json& arr = field(j, name, "$");
        const std::string ap = std::string("$.") + name;
        if (!arr.is_array() || static_cast<int>(arr.size()) != count)
            throw ValidationError(ap + ": expected " + std::to_string(count) + " matrices");
        std::vector<IntMatrix> out;
        for (int k = 0; k < count; ++k) {
            auto [r, c] = dims(k);
            out.push_back(matrix_from_json(arr[k], r, c, ap + "[" + std::to_string(k) + "]"));
        }
        return out;
    };
    m.res = read_list("res", nn, [&](int k) { return std::pair{m.gens(k), m.gens(k + 1)}; });
    m.tr = read_list("tr", nn, [&](int k) { return std::pair{m.gens(k + 1), m.gens(k)}; });
    m.weyl = read_list("weyl", nn + 1, [&](int k) { return std::pair{m.gens(k), m.gens(k)}; });
    auto v = validate(m);
    if (!v.empty()) throw ValidationError("$: " + v.front());
    return m;
}

namespace {
Json canonical_to_json(const CanonicalForm& c) {
    Json t = Json::array();
    for (const auto& d : c.torsion) t.push_back(d.str());
    return Json{{"torsion", t}, {"free_rank", c.free_rank}};
}
CanonicalForm canonical_from_json(const Json& j) {
    CanonicalForm c;
    for (const auto& d : j.at("torsion")) c.torsion.push_back(Integer(d.get<std::string>()));
    c.free_rank = j.at("free_rank").get<int>();
    return c;
}
}  // namespace

Json fingerprint_to_json(const Fingerprint& fp) {
    Json levels = Json::array();
    for (const auto& l : fp.levels) levels.push_back(canonical_to_json(l));
    Json maps = Json::array();
    for (const auto& m : fp.maps)
        maps.push_back(Json{{"label", m.label},
                            {"kernel", canonical_to_json(m.kernel)},
                            {"image", canonical_to_json(m.image)},
                            {"cokernel", canonical_to_json(m.cokernel)}});
    return Json{{"p", fp.shape.p}, {"n", fp.shape.n}, {"levels", levels}, {"maps", maps}};
}

Fingerprint fingerprint_from_json(const Json& j) {
    Fingerprint fp;
    fp.shape = TowerShape{j.at("p").get<int>(), j.at("n").get<int>()};
    for (const auto& l : j.at("levels")) fp.levels.push_back(canonical_from_json(l));
    for (const auto& m : j.at("maps"))
        fp.maps.push_back(MapInvariant{m.at("label").get<std::string>(), canonical_from_json(m.at("kernel")),
                                       canonical_from_json(m.at("image")), canonical_from_json(m.at("cokernel"))});
    return fp;
}

std::string render_lewis(const MackeyFunctor& m) {
    std::ostringstream os;
    const int n = m.shape.n;
    auto orbit_name = [&](int k) {
        if (k == n) return std::string("G/G");
        if (k == 0) return std::string("G/e");
        return "G/C_" + std::to_string(m.shape.p) + (k > 1 ? "^" + std::to_string(k) : std::string());
    };
    for (int k = n; k >= 0; --k) {
        os << orbit_name(k) << ": " << group_label(m.level[k]);
        if (m.gens(k) > 0) {
            os << "  gens(";
            for (int i = 0; i < m.gens(k); ++i) os << (i ? "," : "") << (m.level[k].order(i) == 0 ? "Z" : "Z/" + m.level[k].order(i).str());
            os << ")";
            if (k < n && !matrices_equal(m.weyl[k], identity_matrix(m.gens(k))))
                os << "  weyl " << matrix_to_string(m.weyl[k]);
        }
        os << "\n";
        if (k > 0) os << "   res " << matrix_to_string(m.res[k - 1]) << "  tr " << matrix_to_string(m.tr[k - 1]) << "\n";
    }
    return os.str();
}

namespace {

struct NamedFunctor {
    std::string name;
    Fingerprint fp;
    MackeyFunctor m;
};

std::vector<NamedFunctor> small_catalog(const TowerShape& shape) {
    std::vector<NamedFunctor> out;
    auto add = [&](std::string name, MackeyFunctor m) {
        Fingerprint fp = fingerprint(m);
        out.push_back({std::move(name), std::move(fp), std::move(m)});
    };
    auto tname = [](const std::vector<int>& t) {
        std::string s = "(";
        for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
        return s + ")";
    };
    for (const auto& t : all_t_vectors(shape.n)) {
        add("Z" + tname(t), form_z(shape, t));
        bool any = false;
        for (int v : t) any |= v != 0;
        if (any) {
            MackeyFunctor b = torsion_b(shape, t);
            MackeyFunctor be = dual_levelwise(b, DualMode::E);
            add("B" + tname(t), b);
            if (!(fingerprint(be) == fingerprint(b))) add("B" + tname(t) + "^E", be);
        }
    }
    if (shape.p == 2) {
        add("Z_-", signed_z(shape));
        add("Zdot_-", signed_z_dot(shape));
    }
    return out;
}

}  // namespace

std::string identify(const MackeyFunctor& m) {
    if (m.is_zero()) return "0";
    Fingerprint fp = fingerprint(m);
    auto cat = small_catalog(m.shape);
    for (const auto& c : cat)
        if (c.fp == fp) return c.name;
    for (std::size_t a = 0; a < cat.size(); ++a)
        for (std::size_t b = a; b < cat.size(); ++b) {
            // cheap level check before building the sum
            bool plausible = true;
            for (int k = 0; k <= m.shape.n && plausible; ++k) {
                FgAbGroup s = cat[a].m.level[k].direct_sum(cat[b].m.level[k]);
                plausible = s.canonical() == m.level[k].canonical();
            }
            if (!plausible) continue;
            if (fingerprint(direct_sum_m(cat[a].m, cat[b].m)) == fp) return cat[a].name + " + " + cat[b].name;
        }
    std::string s = "[";
    for (int k = m.shape.n; k >= 0; --k) s += (k < m.shape.n ? " | " : "") + group_label(m.level[k]);
    return s + "]";
}

std::string describe_graded(const GradedMackey& g) {
    std::ostringstream os;
    bool any = false;
    for (const auto& [d, m] : g) {
        if (m.is_zero()) continue;
        os << d << ": " << identify(m) << "\n";
        any = true;
    }
    if (!any) os << "(all zero)\n";
    return os.str();
}

}  // namespace mackey

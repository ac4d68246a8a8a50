#include "arsp/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace arsp {

std::uint64_t Rng::next_u64() {
    // splitmix64 seeding into xorshift-style stream; fixed algorithm, no
    // dependence on library internals
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::uniform_int(std::uint64_t n) {
    if (n == 0) throw BadParamError("uniform_int needs n > 0");
    const std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % n;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % n;
}

double Rng::normal(double mean, double sd) {
    if (has_spare_) {
        has_spare_ = false;
        return mean + sd * spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return mean + sd * u * f;
}

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

std::vector<double> gen_center(Distribution dist, int d, Rng& rng) {
    std::vector<double> c(d);
    switch (dist) {
        case Distribution::IND:
            for (auto& x : c) x = rng.uniform01();
            break;
        case Distribution::CORR: {
            const double t = rng.uniform01();
            for (auto& x : c) x = clamp01(t + rng.normal(0.0, 0.05));
            break;
        }
        case Distribution::ANTI: {
            const double plane = rng.normal(0.5, 0.05);
            std::vector<double> g(d);
            double mean = 0.0;
            for (auto& x : g) {
                x = rng.uniform01();
                mean += x;
            }
            mean /= d;
            for (int i = 0; i < d; ++i) c[i] = clamp01(plane + (g[i] - mean));
            break;
        }
    }
    return c;
}

}  // namespace

UncertainDataset gen_dataset(const GenParams& p, GenReport* report) {
    if (p.m < 1) throw BadParamError("m must be >= 1");
    if (p.cnt < 1) throw BadParamError("cnt must be >= 1");
    if (p.d < 2) throw BadParamError("d must be >= 2");
    if (p.l < 0.0 || p.l > 1.0) throw BadParamError("l must be in [0, 1]");
    if (p.phi < 0.0 || p.phi > 1.0) throw BadParamError("phi must be in [0, 1]");

    Rng rng(p.seed);
    UncertainDataset ds;
    ds.dim = p.d;
    ds.objects.resize(p.m);

    for (std::size_t i = 0; i < p.m; ++i) {
        auto& obj = ds.objects[i];
        obj.object_id = static_cast<int>(i + 1);
        const auto center = gen_center(p.dist, p.d, rng);
        double edge = 0.0;
        if (p.l > 0.0) {
            do {
                edge = rng.normal(p.l / 2.0, p.l / 8.0);
            } while (edge < 0.0 || edge > p.l);
        }
        const int ni = static_cast<int>(rng.uniform_int(std::uint64_t(p.cnt))) + 1;
        const double prob = 1.0 / ni;
        for (int j = 0; j < ni; ++j) {
            Instance t;
            t.object_id = obj.object_id;
            t.instance_id = j + 1;
            t.prob = prob;
            t.coords.resize(p.d);
            for (int k = 0; k < p.d; ++k)
                t.coords[k] = clamp01(center[k] + edge * (rng.uniform01() - 0.5));
            obj.instances.push_back(std::move(t));
        }
    }

    std::size_t exempt = 0;
    const std::size_t affected = static_cast<std::size_t>(p.phi * double(p.m));
    for (std::size_t i = 0; i < affected && i < p.m; ++i) {
        auto& obj = ds.objects[i];
        if (obj.instances.size() <= 1) {
            ++exempt;  // cannot drop to zero instances
            continue;
        }
        obj.instances.pop_back();  // last instance; probabilities stay put
    }
    if (report) report->phi_exempt = exempt;
    return ds;
}

LinearConstraintSystem gen_constraints(ConstraintKind kind, int d, int c, std::uint64_t seed,
                                       std::vector<double>* hidden) {
    if (d < 2) throw BadParamError("d must be >= 2");
    if (hidden) hidden->clear();
    LinearConstraintSystem cs;
    cs.dim = d;
    if (kind == ConstraintKind::WR) {
        if (c < 0 || c > d - 1) throw BadParamError("WR requires 0 <= c <= d-1");
        for (int i = 0; i < c; ++i) {
            LinearConstraintSystem::Row row;
            row.coeffs.assign(d, 0.0);
            row.coeffs[i] = -1.0;
            row.coeffs[i + 1] = 1.0;  // w[i+1] - w[i] <= 0
            cs.rows.push_back(std::move(row));
        }
        return cs;
    }
    if (c < 1) throw BadParamError("IM requires c >= 1");
    Rng rng(seed);
    // hidden preference: uniform on the simplex via exponential normalization
    std::vector<double> wstar(d);
    double total = 0.0;
    for (auto& w : wstar) {
        w = -std::log(1.0 - rng.uniform01());
        total += w;
    }
    for (auto& w : wstar) w /= total;
    if (hidden) *hidden = wstar;
    for (int i = 0; i < c; ++i) {
        LinearConstraintSystem::Row row;
        row.coeffs.resize(d);
        double at_star = 0.0;
        for (int j = 0; j < d; ++j) {
            row.coeffs[j] = rng.uniform01() - rng.uniform01();  // t[j] - s[j]
            at_star += row.coeffs[j] * wstar[j];
        }
        if (at_star > 0.0)
            for (auto& x : row.coeffs) x = -x;
        cs.rows.push_back(std::move(row));
    }
    return cs;
}

std::pair<UncertainDataset, LinearConstraintSystem> gen_ov_instance(
    const std::vector<std::vector<int>>& A, const std::vector<std::vector<int>>& B) {
    if (A.empty() || B.empty()) throw BadParamError("vector sets must be non-empty");
    const std::size_t d = A.front().size();
    for (const auto& v : A)
        if (v.size() != d) throw BadParamError("vectors must share dimension");
    for (const auto& v : B)
        if (v.size() != d) throw BadParamError("vectors must share dimension");

    UncertainDataset ds;
    ds.dim = static_cast<int>(d);
    int next_id = 1;
    for (const auto& b : B) {
        UncertainObject obj;
        obj.object_id = next_id++;
        Instance t;
        t.object_id = obj.object_id;
        t.instance_id = 1;
        t.prob = 1.0;
        t.coords.assign(b.begin(), b.end());
        obj.instances.push_back(std::move(t));
        ds.objects.push_back(std::move(obj));
    }
    UncertainObject ta;
    ta.object_id = next_id;
    const double pa = 1.0 / double(A.size());
    for (std::size_t j = 0; j < A.size(); ++j) {
        Instance t;
        t.object_id = ta.object_id;
        t.instance_id = static_cast<int>(j + 1);
        t.prob = pa;
        t.coords.resize(d);
        for (std::size_t k = 0; k < d; ++k) t.coords[k] = A[j][k] ? 0.5 : 1.5;
        ta.instances.push_back(std::move(t));
    }
    ds.objects.push_back(std::move(ta));

    LinearConstraintSystem cs;  // full simplex: vertices are the unit weights
    cs.dim = static_cast<int>(d);
    return {std::move(ds), std::move(cs)};
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

IngestMapping parse_mapping_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadMappingError("cannot open mapping file " + path);
    IngestMapping mp;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw BadMappingError("expected key=value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "group_by") {
            mp.group_by = value;
        } else if (key == "attrs") {
            for (auto& a : split(value, ',')) mp.attrs.push_back(trim(a));
        } else if (key == "orient") {
            for (auto& o : split(value, ',')) {
                const std::string t = trim(o);
                if (t != "min" && t != "max") throw BadMappingError("orient must be min or max");
                mp.maximize.push_back(t == "max");
            }
        } else if (key == "confidence") {
            mp.confidence_col = value;
        } else if (key.rfind("conf.", 0) == 0) {
            mp.confidence_map[key.substr(5)] = std::stod(value);
        } else {
            throw BadMappingError("unknown mapping key " + key);
        }
    }
    if (mp.group_by.empty() || mp.attrs.empty())
        throw BadMappingError("mapping needs group_by and attrs");
    if (mp.maximize.empty()) mp.maximize.assign(mp.attrs.size(), false);
    if (mp.maximize.size() != mp.attrs.size())
        throw BadMappingError("orient list length differs from attrs");
    return mp;
}

UncertainDataset ingest_csv(const std::string& path, const IngestMapping& mapping) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(0, "empty file");
    const auto header = split(trim(line), ',');

    auto column = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (trim(header[i]) == name) return i;
        throw BadMappingError("column not found: " + name);
    };
    const std::size_t group_col = column(mapping.group_by);
    std::vector<std::size_t> attr_cols;
    for (const auto& a : mapping.attrs) attr_cols.push_back(column(a));
    const bool has_conf = !mapping.confidence_col.empty();
    const std::size_t conf_col = has_conf ? column(mapping.confidence_col) : 0;

    UncertainDataset ds;
    ds.dim = static_cast<int>(attr_cols.size());
    std::map<std::string, std::size_t> group_pos;  // label -> object index

    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() < header.size()) throw ParseError(row, "too few columns");
        const std::string label = trim(cells[group_col]);

        Instance t;
        t.coords.resize(ds.dim);
        for (int k = 0; k < ds.dim; ++k) {
            try {
                t.coords[k] = std::stod(trim(cells[attr_cols[k]]));
            } catch (const std::exception&) {
                throw ParseError(row, "bad attribute value '" + trim(cells[attr_cols[k]]) + "'");
            }
            if (mapping.maximize[k]) t.coords[k] = -t.coords[k];
        }
        if (has_conf) {
            const std::string conf = trim(cells[conf_col]);
            auto it = mapping.confidence_map.find(conf);
            if (it == mapping.confidence_map.end())
                throw ParseError(row, "confidence label '" + conf + "' not in mapping");
            t.prob = it->second;
        }

        auto [it, inserted] = group_pos.emplace(label, ds.objects.size());
        if (inserted) {
            UncertainObject obj;
            obj.object_id = static_cast<int>(ds.objects.size() + 1);
            ds.objects.push_back(std::move(obj));
        }
        auto& obj = ds.objects[it->second];
        t.object_id = obj.object_id;
        t.instance_id = static_cast<int>(obj.instances.size() + 1);
        obj.instances.push_back(std::move(t));
    }
    if (ds.objects.empty()) throw ParseError(row, "no data rows");

    if (!has_conf)
        for (auto& obj : ds.objects) {
            const double p = 1.0 / double(obj.instances.size());
            for (auto& t : obj.instances) t.prob = p;
        }
    return ds;
}

}  // namespace arsp

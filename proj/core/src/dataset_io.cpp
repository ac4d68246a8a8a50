#include "arsp/dataset_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace arsp {

namespace {

std::string fmt(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, std::size_t row, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(row, std::string("bad ") + what + " '" + s + "'");
    }
}

int parse_int(const std::string& s, std::size_t row, const char* what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(row, std::string("bad ") + what + " '" + s + "'");
    }
}

}  // namespace

UncertainDataset read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(0, "empty dataset file");
    const auto header = split_csv(line);
    if (header.size() < 4 || header[0] != "object_id" || header[1] != "instance_id" ||
        header[2] != "prob")
        throw ParseError(1, "expected header object_id,instance_id,prob,a1,...");
    const int d = static_cast<int>(header.size() - 3);
    for (int k = 0; k < d; ++k)
        if (header[3 + k] != "a" + std::to_string(k + 1))
            throw ParseError(1, "expected attribute column a" + std::to_string(k + 1));

    UncertainDataset ds;
    ds.dim = d;
    std::map<int, std::size_t> obj_pos;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size()) throw ParseError(row, "wrong column count");
        Instance t;
        t.object_id = parse_int(cells[0], row, "object_id");
        t.instance_id = parse_int(cells[1], row, "instance_id");
        t.prob = parse_double(cells[2], row, "prob");
        t.coords.resize(d);
        for (int k = 0; k < d; ++k) t.coords[k] = parse_double(cells[3 + k], row, "attribute");

        auto [it, inserted] = obj_pos.emplace(t.object_id, ds.objects.size());
        if (inserted) {
            UncertainObject obj;
            obj.object_id = t.object_id;
            ds.objects.push_back(std::move(obj));
        }
        ds.objects[it->second].instances.push_back(std::move(t));
    }
    if (ds.objects.empty()) throw ParseError(row, "no data rows");
    return ds;
}

UncertainDataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    return read_dataset_csv(in);
}

void write_dataset_csv(const UncertainDataset& ds, std::ostream& out) {
    out << "object_id,instance_id,prob";
    for (int k = 1; k <= ds.dim; ++k) out << ",a" << k;
    out << "\n";
    for (const auto& obj : ds.objects)
        for (const auto& t : obj.instances) {
            out << t.object_id << ',' << t.instance_id << ',' << fmt(t.prob, 17);
            for (double c : t.coords) out << ',' << fmt(c, 17);
            out << "\n";
        }
}

void write_dataset_csv(const UncertainDataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(0, "cannot open " + path + " for writing");
    write_dataset_csv(ds, out);
}

PreferenceSpec read_constraints(std::istream& in) {
    std::string line;
    std::size_t row = 0;
    if (!std::getline(in, line)) throw ParseError(0, "empty constraint file");
    ++row;
    std::istringstream head(line);
    std::string tag;
    int d = 0;
    if (!(head >> tag >> d) || tag != "d" || d < 1)
        throw ParseError(row, "expected first line 'd <int>'");

    std::vector<std::string> body;
    while (std::getline(in, line)) {
        bool blank = true;
        for (char ch : line)
            if (!isspace(static_cast<unsigned char>(ch))) blank = false;
        if (!blank) body.push_back(line);
    }

    if (!body.empty()) {
        std::istringstream first(body.front());
        std::string kind;
        first >> kind;
        if (kind == "ratio") {
            if (body.size() != 1) throw ParseError(row + 2, "ratio must be the only line");
            RatioBox rb;
            rb.dim = d;
            for (int i = 0; i < d - 1; ++i) {
                RatioBox::Range r;
                if (!(first >> r.lo >> r.hi))
                    throw ParseError(row + 1, "ratio needs 2(d-1) bounds");
                rb.ranges.push_back(r);
            }
            double extra;
            if (first >> extra) throw ParseError(row + 1, "trailing ratio values");
            check_ratio_box(rb);
            return rb;
        }
    }

    LinearConstraintSystem cs;
    cs.dim = d;
    for (const auto& text : body) {
        ++row;
        std::istringstream ls(text);
        LinearConstraintSystem::Row r;
        r.coeffs.resize(d);
        for (int j = 0; j < d; ++j)
            if (!(ls >> r.coeffs[j])) throw ParseError(row, "expected " + std::to_string(d) +
                                                                " coefficients");
        std::string le;
        if (!(ls >> le >> r.rhs) || le != "<=")
            throw ParseError(row, "expected '<= rhs' after coefficients");
        cs.rows.push_back(std::move(r));
    }
    return cs;
}

PreferenceSpec read_constraints(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    return read_constraints(in);
}

void write_constraints(const PreferenceSpec& spec, std::ostream& out) {
    if (std::holds_alternative<RatioBox>(spec)) {
        const auto& rb = std::get<RatioBox>(spec);
        out << "d " << rb.dim << "\nratio";
        for (const auto& r : rb.ranges) out << ' ' << fmt(r.lo, 17) << ' ' << fmt(r.hi, 17);
        out << "\n";
        return;
    }
    const auto& cs = std::get<LinearConstraintSystem>(spec);
    out << "d " << cs.dim << "\n";
    for (const auto& r : cs.rows) {
        for (int j = 0; j < cs.dim; ++j) out << (j ? " " : "") << fmt(r.coeffs[j], 17);
        out << " <= " << fmt(r.rhs, 17) << "\n";
    }
}

void write_constraints(const PreferenceSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(0, "cannot open " + path + " for writing");
    write_constraints(spec, out);
}

void write_result_csv(const ArspResult& result, std::ostream& out) {
    std::vector<std::size_t> order(result.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const auto& keys = result.keys();
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    out << "object_id,instance_id,prob_rsky\n";
    for (auto i : order)
        out << keys[i].object_id << ',' << keys[i].instance_id << ',' << fmt(result[i], 12)
            << "\n";
}

void write_result_csv(const ArspResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(0, "cannot open " + path + " for writing");
    write_result_csv(result, out);
}

ArspResult read_result_csv(const std::string& path, const UncertainDataset& ds) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || split_csv(line) != std::vector<std::string>{
                                       "object_id", "instance_id", "prob_rsky"})
        throw ParseError(1, "expected header object_id,instance_id,prob_rsky");
    ArspResult out(ds);
    std::map<std::pair<int, int>, double> rows;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 3) throw ParseError(row, "wrong column count");
        const int oid = parse_int(cells[0], row, "object_id");
        const int iid = parse_int(cells[1], row, "instance_id");
        rows[{oid, iid}] = parse_double(cells[2], row, "prob_rsky");
    }
    const auto& keys = out.keys();
    for (std::size_t i = 0; i < keys.size(); ++i) {
        auto it = rows.find({keys[i].object_id, keys[i].instance_id});
        if (it == rows.end())
            throw ParseError(0, "result file is missing instance (" +
                                    std::to_string(keys[i].object_id) + "," +
                                    std::to_string(keys[i].instance_id) + ")");
        out[i] = it->second;
    }
    return out;
}

}  // namespace arsp

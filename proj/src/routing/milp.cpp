#include "boomfleet/milp.hpp"

#include <fstream>
#include <sstream>

#include "boomfleet/error.hpp"
#include "boomfleet/format.hpp"

namespace boomfleet {

std::string f_name(int i, int j, int v)
{
    return "f_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(v);
}

std::string o_name(int j) { return "o_" + std::to_string(j); }

int MilpModel::find(const std::string& name) const
{
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

namespace {

class FIndex {
public:
    explicit FIndex(int p) : p_(p), index_(static_cast<std::size_t>(p + 1) * (p + 1) * (p + 1), -1) {}
    int& operator()(int i, int j, int v) { return index_[(static_cast<std::size_t>(i) * (p_ + 1) + j) * (p_ + 1) + v]; }

private:
    int p_;
    std::vector<int> index_;
};

}  // namespace

MilpModel build_milp(const MotionGraph& graph, int k)
{
    const int p = graph.spill_count();
    if (p < 1) throw Error(ErrorCode::config, "the routing model needs at least one spill");
    if (k < 1) throw Error(ErrorCode::config, "fleet size must be at least 1");

    MilpModel m;
    FIndex f(p);
    for (int v = 1; v <= p; ++v) {
        for (int i = 0; i <= p; ++i) {
            if (i == v) continue;
            for (int j = 1; j <= p; ++j) {
                if (j == i) continue;
                f(i, j, v) = static_cast<int>(m.variables.size());
                m.variables.push_back({f_name(i, j, v), true, 0.0, 1.0});
            }
        }
    }
    std::vector<int> o(static_cast<std::size_t>(p) + 1, -1);
    for (int j = 1; j <= p; ++j) {
        o[j] = static_cast<int>(m.variables.size());
        m.variables.push_back({o_name(j), false, 1.0, static_cast<double>(p)});
    }

    for (int v = 1; v <= p; ++v) {
        for (int i = 0; i <= p; ++i) {
            if (i == v) continue;
            for (int j = 1; j <= p; ++j) {
                if (j == i) continue;
                const double coef = graph.risk(v) * graph.cost(i, j);
                if (coef != 0.0) m.objective.push_back({coef, f(i, j, v)});
            }
        }
    }

    Constraint fleet{"fleet", {}, Sense::le, static_cast<double>(k)};
    for (int j = 1; j <= p; ++j) fleet.terms.push_back({1.0, f(0, j, j)});
    m.constraints.push_back(std::move(fleet));

    for (int v = 1; v <= p; ++v) {
        Constraint c{"serve_" + std::to_string(v), {}, Sense::ge, 1.0};
        for (int i = 0; i <= p; ++i) {
            if (i != v) c.terms.push_back({1.0, f(i, v, v)});
        }
        m.constraints.push_back(std::move(c));
    }

    for (int v = 1; v <= p; ++v) {
        Constraint c{"leave_" + std::to_string(v), {}, Sense::eq, 1.0};
        for (int j = 1; j <= p; ++j) c.terms.push_back({1.0, f(0, j, v)});
        m.constraints.push_back(std::move(c));
    }

    const double big = static_cast<double>(p + 1);
    for (int i = 0; i <= p; ++i) {
        for (int j = 1; j <= p; ++j) {
            if (j == i) continue;
            Constraint c{"link_" + std::to_string(i) + "_" + std::to_string(j), {}, Sense::le, 0.0};
            for (int w = 1; w <= p; ++w) {
                if (w != i && w != j) c.terms.push_back({1.0, f(i, j, w)});
            }
            if (c.terms.empty()) continue;
            c.terms.push_back({-big, f(i, j, j)});
            m.constraints.push_back(std::move(c));
        }
    }

    for (int v = 1; v <= p; ++v) {
        for (int h = 1; h <= p; ++h) {
            if (h == v) continue;
            Constraint c{"flow_" + std::to_string(h) + "_" + std::to_string(v), {}, Sense::eq, 0.0};
            for (int i = 0; i <= p; ++i) {
                if (i != h && i != v) c.terms.push_back({1.0, f(i, h, v)});
            }
            for (int j = 1; j <= p; ++j) {
                if (j != h) c.terms.push_back({-1.0, f(h, j, v)});
            }
            m.constraints.push_back(std::move(c));
        }
    }

    for (int i = 1; i <= p; ++i) {
        Constraint c{"next_" + std::to_string(i), {}, Sense::le, 1.0};
        for (int j = 1; j <= p; ++j) {
            if (j != i) c.terms.push_back({1.0, f(i, j, j)});
        }
        if (!c.terms.empty()) m.constraints.push_back(std::move(c));
    }

    for (int i = 1; i <= p; ++i) {
        for (int j = 1; j <= p; ++j) {
            if (j == i) continue;
            m.constraints.push_back({"order_" + std::to_string(i) + "_" + std::to_string(j),
                                     {{1.0, o[i]}, {-1.0, o[j]}, {static_cast<double>(p), f(i, j, j)}},
                                     Sense::le,
                                     static_cast<double>(p - 1)});
        }
    }
    return m;
}

namespace {

void write_terms(std::ostringstream& os, const MilpModel& m, const std::vector<LinearTerm>& terms)
{
    std::size_t width = 0;
    bool first = true;
    for (const auto& t : terms) {
        std::string piece;
        const double mag = t.coef < 0 ? -t.coef : t.coef;
        piece += (t.coef < 0) ? "- " : (first ? "" : "+ ");
        if (mag != 1.0) piece += format_double(mag) + " ";
        piece += m.variables[t.var].name;
        if (width + piece.size() > 200) {
            os << "\n   ";
            width = 0;
        }
        os << ' ' << piece;
        width += piece.size() + 1;
        first = false;
    }
    if (terms.empty()) os << " 0 " << m.variables.front().name;
}

}  // namespace

std::string to_lp_text(const MilpModel& m)
{
    std::ostringstream os;
    os << "\\ weighted-latency spill routing\n";
    os << "Minimize\n obj:";
    write_terms(os, m, m.objective);
    os << "\nSubject To\n";
    for (const auto& c : m.constraints) {
        os << ' ' << c.name << ':';
        write_terms(os, m, c.terms);
        os << (c.sense == Sense::le ? " <= " : c.sense == Sense::ge ? " >= " : " = ") << format_double(c.rhs) << '\n';
    }
    os << "Bounds\n";
    for (const auto& v : m.variables) {
        if (!v.binary) os << ' ' << format_double(v.lower) << " <= " << v.name << " <= " << format_double(v.upper) << '\n';
    }
    os << "Binaries\n";
    std::size_t width = 0;
    for (const auto& v : m.variables) {
        if (!v.binary) continue;
        if (width + v.name.size() > 200) {
            os << '\n';
            width = 0;
        }
        os << ' ' << v.name;
        width += v.name.size() + 1;
    }
    os << "\nEnd\n";
    return os.str();
}

void export_milp(const MotionGraph& graph, int k, const std::filesystem::path& path)
{
    const std::string text = to_lp_text(build_milp(graph, k));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw Error(ErrorCode::io, "failed writing " + path.string());
}

}  // namespace boomfleet

#include "ucb/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ucb {

std::string fmt_num(double v) {
    if (v == 0.0) return "0";  // normalizes -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

VariableRef Model::add_variable(const std::string& name, VarKind kind, double lower, double upper) {
    if (name_to_index_.count(name))
        throw std::invalid_argument("duplicate variable name: " + name);
    if (!(lower <= upper))
        throw std::invalid_argument("inverted bounds on " + name);
    if (kind == VarKind::Binary && (lower < 0.0 || upper > 1.0))
        throw std::invalid_argument("binary bounds outside [0,1] on " + name);
    Variable v;
    v.name = name;
    v.kind = kind;
    v.lower = lower;
    v.upper = upper;
    int idx = static_cast<int>(vars_.size());
    vars_.push_back(std::move(v));
    obj_linear_.push_back(0.0);
    obj_quad_.push_back(0.0);
    name_to_index_.emplace(name, idx);
    return VariableRef{idx};
}

void Model::add_constraint(std::vector<std::pair<int, double>> terms, Sense sense, double rhs,
                           std::string tag) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, double>> merged;
    merged.reserve(terms.size());
    for (const auto& [idx, coef] : terms) {
        if (idx < 0 || idx >= static_cast<int>(vars_.size()))
            throw std::invalid_argument("constraint references unknown variable");
        if (!std::isfinite(coef)) throw std::invalid_argument("non-finite coefficient");
        if (!merged.empty() && merged.back().first == idx)
            merged.back().second += coef;
        else
            merged.emplace_back(idx, coef);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& t) { return t.second == 0.0; }),
                 merged.end());
    cons_.push_back(LinearConstraint{std::move(merged), sense, rhs, std::move(tag)});
}

void Model::add_objective(int var, double linear, double quad) {
    obj_linear_.at(static_cast<size_t>(var)) += linear;
    if (quad != 0.0) {
        if (vars_[static_cast<size_t>(var)].kind != VarKind::Continuous)
            throw std::invalid_argument("quadratic objective on non-continuous variable");
        obj_quad_[static_cast<size_t>(var)] += quad;
    }
}

int Model::var_index(const std::string& name) const {
    auto it = name_to_index_.find(name);
    return it == name_to_index_.end() ? -1 : it->second;
}

bool Model::has_quadratic() const {
    for (double q : obj_quad_)
        if (q != 0.0) return true;
    return false;
}

Model Model::relax() const {
    Model m = *this;
    for (auto& v : m.vars_) {
        if (v.kind == VarKind::Binary) {
            v.kind = VarKind::Continuous;
            v.lower = std::max(v.lower, 0.0);
            v.upper = std::min(v.upper, 1.0);
        }
    }
    return m;
}

ModelStats Model::stats() const {
    ModelStats s;
    for (const auto& v : vars_)
        (v.kind == VarKind::Binary ? s.n_binary : s.n_continuous)++;
    s.n_constraints = static_cast<std::int64_t>(cons_.size());
    for (const auto& c : cons_) s.n_nonzeros += static_cast<std::int64_t>(c.terms.size());
    return s;
}

std::map<std::string, std::int64_t> Model::tag_counts() const {
    std::map<std::string, std::int64_t> out;
    for (const auto& c : cons_) out[c.tag]++;
    return out;
}

double Model::eval_objective(const std::vector<double>& x) const {
    double z = obj_constant_;
    for (size_t j = 0; j < vars_.size(); ++j)
        z += obj_linear_[j] * x[j] + obj_quad_[j] * x[j] * x[j];
    return z;
}

namespace {

// classic fixed-field layout; names longer than 8 chars widen their field,
// which every whitespace-tolerant MPS reader accepts
void mps_field(std::string& line, size_t start, const std::string& text) {
    if (line.size() < start)
        line.resize(start, ' ');
    else
        line += ' ';
    line += text;
}

std::string row_name(size_t i) { return "c" + std::to_string(i + 1); }

}  // namespace

std::string Model::write_mps() const {
    std::ostringstream os;
    os << "NAME          " << name << "\n";
    os << "ROWS\n";
    os << " N  COST\n";
    for (size_t i = 0; i < cons_.size(); ++i) {
        char s = cons_[i].sense == Sense::LE ? 'L' : (cons_[i].sense == Sense::GE ? 'G' : 'E');
        os << " " << s << "  " << row_name(i) << "\n";
    }
    // column-major coefficient lists
    std::vector<std::vector<std::pair<size_t, double>>> by_col(vars_.size());
    for (size_t i = 0; i < cons_.size(); ++i)
        for (const auto& [j, a] : cons_[i].terms)
            by_col[static_cast<size_t>(j)].emplace_back(i, a);

    os << "COLUMNS\n";
    bool in_int = false;
    int marker_no = 0;
    auto emit_marker = [&](bool enter) {
        std::string line;
        mps_field(line, 4, "MARKER" + std::to_string(marker_no++));
        mps_field(line, 14, "'MARKER'");
        mps_field(line, 39, enter ? "'INTORG'" : "'INTEND'");
        os << line << "\n";
    };
    for (size_t j = 0; j < vars_.size(); ++j) {
        bool is_int = vars_[j].kind == VarKind::Binary;
        if (is_int != in_int) {
            emit_marker(is_int);
            in_int = is_int;
        }
        std::vector<std::pair<std::string, double>> entries;
        if (obj_linear_[j] != 0.0) entries.emplace_back("COST", obj_linear_[j]);
        for (const auto& [i, a] : by_col[j]) entries.emplace_back(row_name(i), a);
        if (entries.empty()) entries.emplace_back("COST", 0.0);  // keep empty columns visible
        for (size_t k = 0; k < entries.size(); k += 2) {
            std::string line;
            mps_field(line, 4, vars_[j].name);
            mps_field(line, 14, entries[k].first);
            mps_field(line, 24, fmt_num(entries[k].second));
            if (k + 1 < entries.size()) {
                mps_field(line, 39, entries[k + 1].first);
                mps_field(line, 49, fmt_num(entries[k + 1].second));
            }
            os << line << "\n";
        }
    }
    if (in_int) emit_marker(false);

    os << "RHS\n";
    for (size_t i = 0; i < cons_.size(); ++i) {
        if (cons_[i].rhs == 0.0) continue;
        std::string line;
        mps_field(line, 4, "RHS");
        mps_field(line, 14, row_name(i));
        mps_field(line, 24, fmt_num(cons_[i].rhs));
        os << line << "\n";
    }
    if (obj_constant_ != 0.0) {
        // MPS convention: RHS entry on the objective row is the negated constant
        std::string line;
        mps_field(line, 4, "RHS");
        mps_field(line, 14, "COST");
        mps_field(line, 24, fmt_num(-obj_constant_));
        os << line << "\n";
    }

    os << "BOUNDS\n";
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& v : vars_) {
        auto bound = [&](const char* kind, double val, bool with_val = true) {
            std::string line;
            line += ' ';
            line += kind;
            mps_field(line, 4, "BND");
            mps_field(line, 14, v.name);
            if (with_val) mps_field(line, 24, fmt_num(val));
            os << line << "\n";
        };
        if (v.kind == VarKind::Binary && v.lower == 0.0 && v.upper == 1.0) {
            bound("BV", 0.0, false);
            continue;
        }
        if (v.lower == v.upper) {
            bound("FX", v.lower);
            continue;
        }
        if (v.lower == -inf)
            bound("MI", 0.0, false);
        else if (v.lower != 0.0)
            bound("LO", v.lower);
        if (v.upper != inf) bound("UP", v.upper);
    }

    if (has_quadratic()) {
        // QMATRIX holds Q with objective c'x + (1/2) x'Qx, so diagonal entries are 2*coef
        os << "QMATRIX\n";
        for (size_t j = 0; j < vars_.size(); ++j) {
            if (obj_quad_[j] == 0.0) continue;
            std::string line;
            mps_field(line, 4, vars_[j].name);
            mps_field(line, 14, vars_[j].name);
            mps_field(line, 24, fmt_num(2.0 * obj_quad_[j]));
            os << line << "\n";
        }
    }
    os << "ENDATA\n";
    return os.str();
}

std::string Model::write_lp() const {
    std::ostringstream os;
    os << "\\ " << name << "\n";
    os << "Minimize\n obj:";
    {
        size_t width = 5;
        auto put = [&](const std::string& piece) {
            if (width + piece.size() > 78) {
                os << "\n  ";
                width = 2;
            }
            os << piece;
            width += piece.size();
        };
        bool any = false;
        for (size_t j = 0; j < vars_.size(); ++j) {
            double c = obj_linear_[j];
            if (c == 0.0) continue;
            std::string piece = (c < 0 ? " - " : (any ? " + " : " "));
            double a = std::abs(c);
            if (a != 1.0) piece += fmt_num(a) + " ";
            piece += vars_[j].name;
            put(piece);
            any = true;
        }
        if (obj_constant_ != 0.0) {
            std::string piece = obj_constant_ < 0 ? " - " : " + ";
            piece += fmt_num(std::abs(obj_constant_));
            put(piece);
            any = true;
        }
        if (has_quadratic()) {
            put(any ? " + [" : " [");
            bool first = true;
            for (size_t j = 0; j < vars_.size(); ++j) {
                if (obj_quad_[j] == 0.0) continue;
                std::string piece = first ? " " : " + ";
                piece += fmt_num(2.0 * obj_quad_[j]) + " " + vars_[j].name + " ^ 2";
                put(piece);
                first = false;
            }
            put(" ] / 2");
            any = true;
        }
        if (!any) os << " 0";
    }
    os << "\nSubject To\n";
    for (size_t i = 0; i < cons_.size(); ++i) {
        const auto& c = cons_[i];
        os << " " << row_name(i) << ":";
        if (c.terms.empty()) os << " 0";
        bool first = true;
        size_t width = 8;
        for (const auto& [j, a] : c.terms) {
            std::string piece = (a < 0 ? " - " : (first ? " " : " + "));
            double v = std::abs(a);
            if (v != 1.0) piece += fmt_num(v) + " ";
            piece += vars_[static_cast<size_t>(j)].name;
            if (width + piece.size() > 78) {
                os << "\n  ";
                width = 2;
            }
            os << piece;
            width += piece.size();
            first = false;
        }
        os << (c.sense == Sense::LE ? " <= " : (c.sense == Sense::GE ? " >= " : " = "));
        os << fmt_num(c.rhs) << "\n";
    }
    os << "Bounds\n";
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& v : vars_) {
        if (v.lower == v.upper) {
            os << " " << v.name << " = " << fmt_num(v.lower) << "\n";
        } else if (v.lower == 0.0 && v.upper == inf) {
            continue;  // LP-format default
        } else {
            os << " " << (v.lower == -inf ? "-inf" : fmt_num(v.lower)) << " <= " << v.name
               << " <= " << (v.upper == inf ? "+inf" : fmt_num(v.upper)) << "\n";
        }
    }
    bool any_bin = false;
    for (const auto& v : vars_) any_bin |= v.kind == VarKind::Binary;
    if (any_bin) {
        os << "Binaries\n";
        size_t width = 0;
        for (const auto& v : vars_) {
            if (v.kind != VarKind::Binary) continue;
            if (width + v.name.size() + 1 > 78) {
                os << "\n";
                width = 0;
            }
            os << " " << v.name;
            width += v.name.size() + 1;
        }
        os << "\n";
    }
    os << "End\n";
    return os.str();
}

}  // namespace ucb

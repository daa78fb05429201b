#include "pig/io.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "pig/errors.hpp"

namespace pig {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

ColumnClass class_from_string(const std::string& s) {
    if (s == "clique") return ColumnClass::Clique;
    if (s == "semi-clique") return ColumnClass::SemiClique;
    if (s == "simplicial") return ColumnClass::Simplicial;
    throw MalformedInput("unknown column class: " + s);
}

}  // namespace

PartitionedGraph parse_graph(std::istream& in) {
    std::vector<bool> is_probe;
    std::vector<std::string> names;
    std::map<std::string, int> id_of;
    std::vector<std::pair<int, int>> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
        if (toks[0] == "p" || toks[0] == "n") {
            if (toks.size() != 2) throw MalformedInput("expected one name after '" + toks[0] + "'" + where());
            if (id_of.count(toks[1])) throw MalformedInput("duplicate vertex name " + toks[1] + where());
            id_of[toks[1]] = static_cast<int>(names.size());
            names.push_back(toks[1]);
            is_probe.push_back(toks[0] == "p");
        } else if (toks[0] == "e") {
            if (toks.size() != 3) throw MalformedInput("expected two names after 'e'" + where());
            for (int k = 1; k <= 2; k++)
                if (!id_of.count(toks[k])) throw MalformedInput("undeclared vertex " + toks[k] + where());
            edges.push_back({id_of[toks[1]], id_of[toks[2]]});
        } else {
            throw MalformedInput("unknown directive '" + toks[0] + "'" + where());
        }
    }
    return make_graph(std::move(is_probe), edges, std::move(names));
}

std::string format_graph(const PartitionedGraph& g, const std::string& header_comment) {
    std::string out;
    if (!header_comment.empty()) out += "# " + header_comment + "\n";
    for (int v = 0; v < g.n(); v++)
        out += std::string(g.is_probe[v] ? "p " : "n ") + g.names[v] + "\n";
    for (auto [u, v] : g.edges()) out += "e " + g.names[u] + " " + g.names[v] + "\n";
    return out;
}

BinaryMatrix parse_matrix(std::istream& in) {
    std::string line;
    int nr = -1, nc = -1, lineno = 0;
    std::vector<std::pair<RowId, std::vector<ColId>>> rows;
    std::vector<ColId> order;
    while (std::getline(in, line)) {
        lineno++;
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
        auto as_int = [&](const std::string& s) {
            try {
                std::size_t used = 0;
                int v = std::stoi(s, &used);
                if (used != s.size() || v < 0) throw std::invalid_argument(s);
                return v;
            } catch (const std::exception&) {
                throw MalformedInput("expected a non-negative integer, got '" + s + "'" + where());
            }
        };
        if (nr < 0) {
            if (toks.size() != 4 || toks[0] != "rows" || toks[2] != "cols")
                throw MalformedInput("expected 'rows R cols C' header" + where());
            nr = as_int(toks[1]);
            nc = as_int(toks[3]);
            continue;
        }
        if (toks[0] == "order:") {
            for (std::size_t k = 1; k < toks.size(); k++) order.push_back(as_int(toks[k]));
            continue;
        }
        if (toks[0].empty() || toks[0].back() != ':')
            throw MalformedInput("expected 'name: cols...' row line" + where());
        std::vector<ColId> cells;
        for (std::size_t k = 1; k < toks.size(); k++) cells.push_back(as_int(toks[k]));
        rows.push_back({static_cast<RowId>(rows.size()), std::move(cells)});
    }
    if (nr < 0) throw MalformedInput("missing 'rows R cols C' header");
    if (static_cast<int>(rows.size()) != nr)
        throw MalformedInput("header announced " + std::to_string(nr) + " rows, file has " +
                             std::to_string(rows.size()));
    if (order.empty())
        for (int c = 0; c < nc; c++) order.push_back(c);
    if (static_cast<int>(order.size()) != nc)
        throw MalformedInput("column order length does not match the header");
    return BinaryMatrix::from_row_sets(rows, order);
}

std::string format_matrix(const BinaryMatrix& m, const std::vector<std::string>* row_names) {
    std::string out = "rows " + std::to_string(m.n_rows()) + " cols " + std::to_string(m.n_cols()) + "\n";
    for (RowId r : m.rows) {
        out += row_names ? (*row_names)[r] : "r" + std::to_string(r);
        out += ":";
        for (ColId c : m.row(r)) out += " " + std::to_string(c);
        out += "\n";
    }
    out += "order:";
    for (ColId c : m.cols) out += " " + std::to_string(c);
    out += "\n";
    return out;
}

std::string format_pq_tree(const PQTree& t) {
    std::string out;
    auto walk = [&](auto&& self, const PQNode* node) -> void {
        if (node->kind == PQKind::Leaf) {
            out += std::to_string(node->leaf_col);
            return;
        }
        out += node->kind == PQKind::Q ? "Q(" : "P(";
        for (const PQNode* k = node->first; k; k = k->next) {
            if (k != node->first) out += ' ';
            self(self, k);
        }
        out += ')';
    };
    if (t.root() == nullptr) return "()";
    walk(walk, t.root());
    return out;
}

namespace {

nlohmann::json model_json_body(const PartitionedGraph& g, const RecognitionResult& result,
                               const UniquenessVerdict* unique) {
    const BinaryMatrix& m = result.model.matrix;
    nlohmann::json j;
    j["verdict"] = "accepted";
    auto& cols = j["columns"] = nlohmann::json::array();
    for (int pos = 0; pos < m.n_cols(); pos++) {
        ColId c = m.cols[pos];
        nlohmann::json col;
        col["index"] = pos;
        col["class"] = to_string(result.model.col_class[c]);
        auto& verts = col["vertices"] = nlohmann::json::array();
        for (RowId r : m.col(c)) verts.push_back(g.names[r]);
        cols.push_back(std::move(col));
    }
    auto& ivs = j["intervals"] = nlohmann::json::array();
    for (RowId r : m.rows) {
        auto span = m.row_span(r);
        nlohmann::json iv;
        iv["vertex"] = g.names[r];
        iv["first"] = span.first;
        iv["last"] = span.last;
        ivs.push_back(std::move(iv));
    }
    if (unique) {
        j["unique"] = unique->unique;
        if (!unique->unique) {
            if (unique->failing_test) j["failing_test"] = to_string(*unique->failing_test);
            j["witness"] = unique->witness;
        }
    }
    return j;
}

}  // namespace

std::string model_to_json(const PartitionedGraph& g, const RecognitionResult& result,
                          const UniquenessVerdict* unique) {
    return model_json_body(g, result, unique).dump(2) + "\n";
}

std::string reject_to_json(const Reject& reject) {
    nlohmann::json j;
    j["verdict"] = "rejected";
    j["reject"] = {{"stage", to_string(reject.stage)}, {"detail", reject.detail}};
    return j.dump(2) + "\n";
}

std::string model_to_text(const PartitionedGraph& g, const RecognitionResult& result,
                          const UniquenessVerdict* unique) {
    const BinaryMatrix& m = result.model.matrix;
    std::string out = "accepted: " + std::to_string(m.n_cols()) + " columns\n";
    for (int pos = 0; pos < m.n_cols(); pos++) {
        ColId c = m.cols[pos];
        out += "  col " + std::to_string(pos) + " [" + to_string(result.model.col_class[c]) + "]";
        for (RowId r : m.col(c)) out += " " + g.names[r];
        out += "\n";
    }
    for (RowId r : m.rows) {
        auto span = m.row_span(r);
        out += "  " + g.names[r] + ": [" + std::to_string(span.first) + ", " +
               std::to_string(span.last) + "]\n";
    }
    if (unique) {
        out += unique->unique ? "unique: yes\n" : "unique: no";
        if (!unique->unique) {
            if (unique->failing_test)
                out += std::string(" (test ") + to_string(*unique->failing_test) + ")";
            out += " " + unique->witness + "\n";
        }
    }
    return out;
}

ProbeIntervalModel parse_model_json(std::istream& in, const PartitionedGraph& g) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("bad model JSON: ") + e.what());
    }
    try {
        if (j.at("verdict").get<std::string>() != "accepted")
            throw MalformedInput("model file carries a rejected verdict");
        std::map<std::string, int> id_of;
        for (int v = 0; v < g.n(); v++) id_of[g.names[v]] = v;
        auto vertex_id = [&](const std::string& name) {
            auto it = id_of.find(name);
            if (it == id_of.end()) throw MalformedInput("unknown vertex in model: " + name);
            return it->second;
        };

        const auto& cols = j.at("columns");
        const auto& ivs = j.at("intervals");
        int nc = static_cast<int>(cols.size());
        if (nc == 0) throw MalformedInput("model has no columns");
        if (static_cast<int>(ivs.size()) != g.n())
            throw MalformedInput("model must give one interval per vertex");

        std::vector<std::pair<RowId, std::vector<ColId>>> rows;
        std::vector<char> seen(g.n(), 0);
        for (const auto& iv : ivs) {
            int v = vertex_id(iv.at("vertex").get<std::string>());
            if (seen[v]) throw MalformedInput("duplicate interval for " + g.names[v]);
            seen[v] = 1;
            int first = iv.at("first").get<int>(), last = iv.at("last").get<int>();
            if (first < 0 || last < first || last >= nc)
                throw MalformedInput("interval of " + g.names[v] + " is out of range");
            std::vector<ColId> cells;
            for (int c = first; c <= last; c++) cells.push_back(c);
            rows.push_back({v, std::move(cells)});
        }

        ProbeIntervalModel model;
        std::vector<ColId> order(nc);
        for (int c = 0; c < nc; c++) order[c] = c;
        model.matrix = BinaryMatrix::from_row_sets(rows, order);
        model.col_class.assign(nc, ColumnClass::Clique);
        for (const auto& col : cols) {
            int pos = col.at("index").get<int>();
            if (pos < 0 || pos >= nc) throw MalformedInput("column index out of range");
            model.col_class[pos] = class_from_string(col.at("class").get<std::string>());
            std::vector<RowId> listed;
            for (const auto& name : col.at("vertices")) listed.push_back(vertex_id(name.get<std::string>()));
            std::sort(listed.begin(), listed.end());
            if (listed != model.matrix.col(pos))
                throw MalformedInput("column " + std::to_string(pos) + " does not match the intervals");
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("bad model JSON: ") + e.what());
    }
}

}  // namespace pig

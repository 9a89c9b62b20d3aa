#include "onion/certify.hpp"

#include <limits>
#include <map>
#include <sstream>

namespace onion {

Scalar upper_bound(std::size_t d, std::uint64_t n) { return Scalar(d) * Scalar(n) * Scalar(n) + 1; }

Scalar lower_bound(std::size_t d, std::uint64_t n) { return Scalar(d) * Scalar(n) + 1; }

namespace {

/// The single coordinate where x and y differ, or d if there are zero or several.
std::size_t differing_coordinate(const Point& x, const Point& y) {
    const std::size_t d = x.dimension();
    std::size_t k = d;
    for (std::size_t i = 0; i < d; ++i) {
        if (x[i] == y[i]) continue;
        if (k != d) return d;
        k = i;
    }
    return k;
}

}  // namespace

bool prec(const Point& x, const Point& y) {
    if (x.dimension() != y.dimension()) throw DomainError("prec needs points of equal dimension");
    const std::size_t k = differing_coordinate(x, y);
    return k != x.dimension() && abs(x[k]) < abs(y[k]);
}

ConvexCombinationWitness convex_witness_for_prec(const Point& x, const Point& y, const LayerAssignment& a) {
    if (!prec(x, y)) throw DomainError("convex_witness_for_prec needs x < y, got " + x.to_string() + ", " + y.to_string());
    const std::size_t k = differing_coordinate(x, y);
    std::vector<Scalar> reflected(y.coords().begin(), y.coords().end());
    reflected[k] = -reflected[k];
    Point y_reflected(std::move(reflected));

    const Rational ratio(x[k], y[k]);
    const Rational half(1, 2);
    ConvexCombinationWitness w;
    w.support.push_back({y, half * (1 + ratio)});
    w.support.push_back({y_reflected, half * (1 - ratio)});
    if (!w.verifies(x)) throw InternalInconsistency("reflection witness failed exact verification");
    if (a.layer_of(y) != a.layer_of(w.support[1].point)) {
        throw InternalInconsistency("reflected point " + w.support[1].point.to_string() + " is on a different layer than " +
                                    y.to_string());
    }
    return w;
}

namespace {

void require_peeling_of(const Grid& g, const LayerAssignment& a) {
    auto detected = detect_grid(a.source());
    if (!detected || !(*detected == g)) throw DomainError("layer assignment is not a peeling of the given grid");
}

}  // namespace

ChainCertificate build_chain_certificate(const Grid& g, const LayerAssignment& a) {
    require_peeling_of(g, a);
    ChainCertificate c{g, {}, {}};
    std::vector<Scalar> cur(g.dimension, Scalar(0));
    c.chain.emplace_back(cur);
    for (std::size_t k = 0; k < g.dimension; ++k) {
        for (std::uint64_t step = 0; step < g.radius; ++step) {
            ++cur[k];
            c.chain.emplace_back(cur);
        }
    }
    for (const Point& p : c.chain) c.layer_indices.push_back(a.layer_of(p));
    for (std::size_t i = 1; i < c.layer_indices.size(); ++i) {
        if (c.layer_indices[i] >= c.layer_indices[i - 1]) {
            throw InternalInconsistency("chain layers do not strictly decrease at index " + std::to_string(i) + " (" +
                                        c.chain[i - 1].to_string() + " on layer " +
                                        std::to_string(c.layer_indices[i - 1]) + ", " + c.chain[i].to_string() +
                                        " on layer " + std::to_string(c.layer_indices[i]) + ")");
        }
    }
    return c;
}

NormDescentCertificate build_norm_certificate(const Grid& g, const LayerAssignment& a) {
    require_peeling_of(g, a);
    NormDescentCertificate c{g, layer_max_norm_sq(a)};
    if (auto v = verify(c); !v) throw InternalInconsistency("norm-descent certificate invalid: " + v.reason);
    return c;
}

Verdict verify(const NormDescentCertificate& c) {
    const auto& r = c.radii_sq;
    if (c.grid.dimension == 0) return Verdict::fail("dimension must be positive");
    if (r.empty()) return Verdict::fail("no radii");
    const Scalar corner = Scalar(c.grid.dimension) * Scalar(c.grid.radius) * Scalar(c.grid.radius);
    if (r.front() != corner) {
        return Verdict::fail("first radius squared is " + r.front().str() + ", expected d*n^2 = " + corner.str());
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i].sign() < 0) return Verdict::fail("negative radius squared at index " + std::to_string(i));
        if (i > 0 && r[i] >= r[i - 1]) return Verdict::fail("not strictly decreasing at index " + std::to_string(i));
    }
    if (Scalar(r.size()) > upper_bound(c.grid.dimension, c.grid.radius)) {
        return Verdict::fail("more entries than d*n^2 + 1");
    }
    return Verdict::pass();
}

Verdict verify(const ChainCertificate& c) {
    const std::size_t d = c.grid.dimension;
    const Scalar n(c.grid.radius);
    if (d == 0) return Verdict::fail("dimension must be positive");
    if (Scalar(c.chain.size()) != lower_bound(d, c.grid.radius)) {
        return Verdict::fail("chain has " + std::to_string(c.chain.size()) + " points, expected d*n + 1 = " +
                             lower_bound(d, c.grid.radius).str());
    }
    if (c.layer_indices.size() != c.chain.size()) return Verdict::fail("layer count does not match chain length");
    for (std::size_t i = 0; i < c.chain.size(); ++i) {
        const Point& p = c.chain[i];
        if (p.dimension() != d) return Verdict::fail("wrong dimension at index " + std::to_string(i));
        for (const Scalar& x : p.coords()) {
            if (x < -n || x > n) return Verdict::fail("point outside the grid at index " + std::to_string(i));
        }
        if (c.layer_indices[i] == 0) return Verdict::fail("layer index 0 at index " + std::to_string(i));
    }
    if (!(c.chain.front() == Point::origin(d))) return Verdict::fail("chain does not start at the origin");
    if (!(c.chain.back() == Point(std::vector<Scalar>(d, n)))) return Verdict::fail("chain does not end at (n,...,n)");
    for (std::size_t i = 0; i + 1 < c.chain.size(); ++i) {
        if (!prec(c.chain[i], c.chain[i + 1])) return Verdict::fail("prec violated at index " + std::to_string(i));
        if (c.layer_indices[i + 1] >= c.layer_indices[i]) {
            return Verdict::fail("layer indices not strictly decreasing at index " + std::to_string(i + 1));
        }
    }
    return Verdict::pass();
}

Verdict verify_against(const NormDescentCertificate& c, const LayerAssignment& a) {
    if (auto v = verify(c); !v) return v;
    auto detected = detect_grid(a.source());
    if (!detected || !(*detected == c.grid)) return Verdict::fail("assignment is not over the certificate's grid");
    if (a.num_layers() != c.radii_sq.size()) return Verdict::fail("entry count differs from the number of layers");
    if (layer_max_norm_sq(a) != c.radii_sq) return Verdict::fail("radii differ from the layer maxima");
    return Verdict::pass();
}

Verdict verify_against(const ChainCertificate& c, const LayerAssignment& a) {
    if (auto v = verify(c); !v) return v;
    for (std::size_t i = 0; i < c.chain.size(); ++i) {
        if (!a.source().contains(c.chain[i])) return Verdict::fail("chain point missing from assignment");
        if (a.layer_of(c.chain[i]) != c.layer_indices[i]) {
            return Verdict::fail("layer mismatch at index " + std::to_string(i));
        }
    }
    return Verdict::pass();
}

namespace {

std::string header(const char* kind, const Grid& g, std::size_t entries) {
    std::ostringstream os;
    os << "kind: " << kind << "\nd: " << g.dimension << "\nn: " << g.radius << "\nentries: " << entries << '\n';
    return os.str();
}

struct Parsed {
    std::map<std::string, std::string> keys;
    std::vector<std::vector<Scalar>> rows;
};

Scalar parse_integer(const std::string& tok) {
    try {
        std::size_t i = (tok.size() > 1 && (tok[0] == '-' || tok[0] == '+')) ? 1 : 0;
        if (i == tok.size()) throw ParseError("bad integer");
        for (std::size_t j = i; j < tok.size(); ++j) {
            if (tok[j] < '0' || tok[j] > '9') throw ParseError("bad integer '" + tok + "'");
        }
        return Scalar(tok[0] == '+' ? tok.substr(1) : tok);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad integer '" + tok + "'");
    }
}

Parsed parse_text(const std::string& text) {
    Parsed out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (auto colon = line.find(':'); colon != std::string::npos) {
            std::string key = line.substr(0, colon);
            std::string value = line.substr(colon + 1);
            value.erase(0, value.find_first_not_of(" \t"));
            out.keys[key] = value;
            continue;
        }
        std::istringstream row(line);
        std::vector<Scalar> values;
        std::string tok;
        while (row >> tok) values.push_back(parse_integer(tok));
        if (!values.empty()) out.rows.push_back(std::move(values));
    }
    for (const char* key : {"kind", "d", "n", "entries"}) {
        if (!out.keys.contains(key)) throw ParseError(std::string("missing header key '") + key + "'");
    }
    const Scalar entries = parse_integer(out.keys["entries"]);
    if (entries != out.rows.size()) throw ParseError("entry count does not match the number of rows");
    return out;
}

Grid parse_grid(Parsed& p) {
    const Scalar d = parse_integer(p.keys["d"]);
    const Scalar n = parse_integer(p.keys["n"]);
    if (d < 1 || d > 1'000'000 || n < 0 || n > Scalar(std::numeric_limits<std::uint64_t>::max() / 4)) {
        throw ParseError("grid parameters out of range");
    }
    return Grid{d.convert_to<std::size_t>(), n.convert_to<std::uint64_t>()};
}

std::uint32_t to_layer(const Scalar& v) {
    if (v < 0 || v > Scalar(std::numeric_limits<std::uint32_t>::max())) throw ParseError("layer index out of range");
    return v.convert_to<std::uint32_t>();
}

}  // namespace

std::string to_text(const NormDescentCertificate& c) {
    std::string out = header("norm-descent", c.grid, c.radii_sq.size());
    for (std::size_t i = 0; i < c.radii_sq.size(); ++i) out += c.radii_sq[i].str() + ' ' + std::to_string(i + 1) + '\n';
    return out;
}

std::string to_text(const ChainCertificate& c) {
    std::string out = header("chain", c.grid, c.chain.size());
    for (std::size_t i = 0; i < c.chain.size(); ++i) {
        for (const Scalar& x : c.chain[i].coords()) out += x.str() + ' ';
        out += std::to_string(c.layer_indices[i]) + '\n';
    }
    return out;
}

NormDescentCertificate parse_norm_certificate(const std::string& text) {
    Parsed p = parse_text(text);
    if (p.keys["kind"] != "norm-descent") throw ParseError("expected kind 'norm-descent'");
    NormDescentCertificate c{parse_grid(p), {}};
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        if (p.rows[i].size() != 2) throw ParseError("norm-descent rows have two fields");
        if (to_layer(p.rows[i][1]) != i + 1) throw ParseError("norm-descent rows must list layers 1, 2, ...");
        c.radii_sq.push_back(p.rows[i][0]);
    }
    return c;
}

ChainCertificate parse_chain_certificate(const std::string& text) {
    Parsed p = parse_text(text);
    if (p.keys["kind"] != "chain") throw ParseError("expected kind 'chain'");
    ChainCertificate c{parse_grid(p), {}, {}};
    for (auto& row : p.rows) {
        if (row.size() != c.grid.dimension + 1) throw ParseError("chain rows have d coordinates and a layer");
        c.layer_indices.push_back(to_layer(row.back()));
        row.pop_back();
        c.chain.emplace_back(std::move(row));
    }
    return c;
}

}  // namespace onion

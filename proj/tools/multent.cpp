// multent: entropy of axial products of multiplicative subshifts on the
// plane lattice and the binary tree, with exact counting backends.
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multent/grid.hpp"
#include "multent/json_io.hpp"
#include "multent/partitions.hpp"
#include "multent/series.hpp"
#include "multent/subshift.hpp"
#include "multent/surface.hpp"
#include "multent/tree_entropy.hpp"
#include "multent/tree_shapes.hpp"

namespace {

using namespace multent;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitCapExceeded = 3;
constexpr int kExitBadInput = 4;

double g_log_base = 0.0; // 0 = natural log

double display(double nats) { return g_log_base > 0.0 ? nats / std::log(g_log_base) : nats; }

void emit(const Json& j) { std::printf("%s\n", j.dump().c_str()); }

Json estimate_json(const EntropyEstimate& est) {
    Json j;
    j["value"] = display(est.value);
    j["tail_bound"] = display(est.tail_bound);
    j["truncation"] = est.truncation;
    j["rigorous"] = est.rigorous;
    if (!est.rigorous) j["uncertainty"] = display(est.uncertainty);
    return j;
}

std::vector<long long> parse_dims(const std::string& s) {
    std::vector<long long> dims;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        dims.push_back(std::stoll(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (dims.empty()) throw BadInput("expected a comma-separated dimension list");
    return dims;
}

VertexType parse_root(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw BadInput("root type must look like '2,1' or '1,3'");
    long long a = std::stoll(s.substr(0, comma));
    long long b = std::stoll(s.substr(comma + 1));
    if (a >= 1 && b == 1) return {1, a};
    if (a == 1 && b >= 1) return {2, b};
    throw BadInput("root type must have a 1 in one coordinate");
}

TreeParams parse_tree_params(const std::string& mode, int p1, int p2) {
    if (mode == "two-sided") return {TreeMode::TwoSided, p1, p2};
    if (mode == "one-sided") return {TreeMode::OneSidedLeft, p1, p2};
    throw BadInput("mode must be 'two-sided' or 'one-sided'");
}

// "geometric:8..1024" (square boxes, doubling) or "8x8,16x32,..."
std::vector<std::pair<long long, long long>> parse_points(const std::string& s) {
    std::vector<std::pair<long long, long long>> pts;
    if (s.rfind("geometric:", 0) == 0) {
        auto range = s.substr(10);
        auto dots = range.find("..");
        if (dots == std::string::npos) throw BadInput("expected geometric:<from>..<to>");
        long long from = std::stoll(range.substr(0, dots));
        long long to = std::stoll(range.substr(dots + 2));
        for (long long v = from; v <= to; v *= 2) pts.push_back({v, v});
        return pts;
    }
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        auto tok = s.substr(pos, next - pos);
        auto x = tok.find('x');
        if (x == std::string::npos) throw BadInput("points: expected <m>x<n> entries");
        pts.push_back({std::stoll(tok.substr(0, x)), std::stoll(tok.substr(x + 1))});
        pos = next + 1;
    }
    return pts;
}

void print_residual_csv(const ResidualSeries& series, bool tree) {
    if (tree)
        std::printf("n,residual,normalizer,ratio\n");
    else
        std::printf("m,n,residual,normalizer,ratio\n");
    for (const auto& p : series.points) {
        if (tree)
            std::printf("%lld,%.15g,%.15g,%.15g\n", p.n, p.residual, p.normalizer, p.ratio);
        else
            std::printf("%lld,%lld,%.15g,%.15g,%.15g\n", p.m, p.n, p.residual, p.normalizer,
                        p.ratio);
    }
}

std::string root_string(const VertexType& t) {
    return t.dir == 1 ? std::to_string(t.index) + ",1" : "1," + std::to_string(t.index);
}

Json shape_json(const ReshapedTree& tree) {
    Json j;
    j["root"] = root_string(tree.root_type);
    j["budget"] = tree.budget;
    j["mode"] = tree.params.mode == TreeMode::TwoSided ? "two-sided" : "one-sided";
    j["p1"] = tree.params.p1;
    if (tree.params.mode == TreeMode::TwoSided) j["p2"] = tree.params.p2;
    j["size"] = tree.size();
    Json verts = Json::array();
    for (const auto& v : tree.vertices) {
        Json e;
        e["parent"] = v.parent;
        e["dir"] = v.in_dir;
        e["cost"] = v.in_cost;
        e["depth"] = v.depth;
        e["word"] = v.word;
        verts.push_back(std::move(e));
    }
    j["vertices"] = std::move(verts);
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"entropy of axial products of subshifts and multiplicative subshifts"};
    app.require_subcommand(1);
    app.add_option("--log-base", g_log_base,
                   "display logarithms in this base (default: natural log)");

    // shared option storage
    std::string dims_str, points_str = "geometric:8..1024", root_str = "1,1";
    std::string mode = "two-sided", kind;
    std::vector<std::string> factor_paths, mult_args, shift_paths;
    std::string omega1_path, omega2_path, omega_path, x_path, spec_path;
    int p = 2, p1 = 2, p2 = 2, d = 2;
    long long n = 1, k = 0, n_max = 12;
    double tol_n2 = 1e-9, tol_tree = 1e-6, tol_nd = 1e-6;
    bool oracle = false, enumerate = false;

    // count ------------------------------------------------------------
    auto* count = app.add_subcommand("count", "exact pattern counts");
    count->require_subcommand(1);

    auto* cbox = count->add_subcommand("box", "count patterns on a box");
    cbox->add_option("--dims", dims_str, "box extents, e.g. 3,4")->required();
    cbox->add_option("--factor", factor_paths, "subshift json per axis")->required();
    cbox->add_flag("--oracle", oracle, "use the exhaustive oracle instead of the transfer DP");

    auto* cwords = count->add_subcommand("words", "count words of a subshift");
    cwords->add_option("--spec", spec_path, "subshift json")->required();
    cwords->add_option("--n", n, "word length")->required();

    auto* cshape = count->add_subcommand("shape", "count patterns on a dependency tree");
    cshape->add_option("--root", root_str, "root type, e.g. 2,1")->required();
    cshape->add_option("--k", k, "depth budget")->required();
    cshape->add_option("--mode", mode, "two-sided | one-sided");
    cshape->add_option("--p1", p1, "direction-1 modulus");
    cshape->add_option("--p2", p2, "direction-2 modulus (two-sided)");
    cshape->add_option("--omega1", omega1_path, "direction-1 factor json")->required();
    cshape->add_option("--omega2", omega2_path, "direction-2 factor json")->required();

    // entropy ------------------------------------------------------------
    auto* entropy = app.add_subcommand("entropy", "entropy series");
    entropy->require_subcommand(1);

    auto* en2 = entropy->add_subcommand("n2", "two multiplicative shifts on the plane");
    en2->add_option("--omega1", omega1_path)->required();
    en2->add_option("--p1", p1)->required();
    en2->add_option("--omega2", omega2_path)->required();
    en2->add_option("--p2", p2)->required();
    en2->add_option("--tol", tol_n2, "tail-bound target (default 1e-9)");

    auto* en2m = entropy->add_subcommand("n2-mixed", "multiplicative x ordinary on the plane");
    en2m->add_option("--omega", omega_path)->required();
    en2m->add_option("--p", p)->required();
    en2m->add_option("--x", x_path)->required();
    en2m->add_option("--tol", tol_n2, "tail-bound target (default 1e-9)");

    auto* etree = entropy->add_subcommand("tree", "two multiplicative shifts on the binary tree");
    etree->add_option("--omega1", omega1_path)->required();
    etree->add_option("--p1", p1)->required();
    etree->add_option("--omega2", omega2_path)->required();
    etree->add_option("--p2", p2)->required();
    etree->add_option("--tol", tol_tree, "tail-bound target (default 1e-6)");

    auto* etreem =
        entropy->add_subcommand("tree-mixed", "multiplicative x ordinary on the binary tree");
    etreem->add_option("--omega", omega_path)->required();
    etreem->add_option("--p", p)->required();
    etreem->add_option("--x", x_path)->required();
    etreem->add_option("--tol", tol_tree, "tail-bound target (default 1e-6)");

    auto* end_ = entropy->add_subcommand("nd", "general axial products on N^d, d <= 4");
    end_->add_option("--mult", mult_args, "multiplicative factor as <file.json>:<p>");
    end_->add_option("--shift", shift_paths, "ordinary factor json");
    end_->add_option("--tol", tol_nd, "tail-bound target (default 1e-6)");

    // partitions ------------------------------------------------------------
    auto* parts = app.add_subcommand("partitions", "composition counts");
    parts->add_option("--kind", kind, "single | alternating")->required();
    parts->add_option("--p", p, "modulus (single)");
    parts->add_option("--p1", p1, "axis-1 modulus (alternating)");
    parts->add_option("--p2", p2, "axis-2 modulus (alternating)");
    parts->add_option("--n", n, "composition total")->required();
    parts->add_flag("--enumerate", enumerate, "list the compositions too");

    // tree ------------------------------------------------------------
    auto* tree = app.add_subcommand("tree", "dependency-tree structure");
    tree->require_subcommand(1);
    auto* tshape = tree->add_subcommand("shape", "emit a dependency tree as json");
    tshape->add_option("--root", root_str)->required();
    tshape->add_option("--k", k)->required();
    tshape->add_option("--mode", mode, "two-sided | one-sided");
    tshape->add_option("--p1", p1);
    tshape->add_option("--p2", p2);

    // verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "structural self-checks");
    verify->require_subcommand(1);

    auto* vdec = verify->add_subcommand("decomposition", "ball tiling by dependency trees");
    vdec->add_option("--n", n)->required();
    vdec->add_option("--mode", mode);
    vdec->add_option("--p1", p1);
    vdec->add_option("--p2", p2);

    auto* vbij = verify->add_subcommand("bijection", "vertex <-> composition round trips");
    vbij->add_option("--kind", kind, "single | alternating")->required();
    vbij->add_option("--k", k, "max composition total")->required();
    vbij->add_option("--p", p);
    vbij->add_option("--p1", p1);
    vbij->add_option("--p2", p2);

    auto* vorc = verify->add_subcommand("oracle", "counting backend vs exhaustive search");
    vorc->add_option("--kind", kind, "box | tree")->required();
    vorc->add_option("--dims", dims_str, "box extents (box)");
    vorc->add_option("--factor", factor_paths, "subshift json per axis (box)");
    vorc->add_option("--n", n, "ball radius (tree)");
    vorc->add_option("--mode", mode);
    vorc->add_option("--p1", p1);
    vorc->add_option("--p2", p2);
    vorc->add_option("--omega1", omega1_path, "direction-1 factor (tree)");
    vorc->add_option("--omega2", omega2_path, "direction-2 factor (tree)");

    auto* vden = verify->add_subcommand("density", "root dependency-set density in the ball");
    vden->add_option("--moduli", dims_str, "per-direction moduli, 0 = ordinary, e.g. 2,3")
        ->required();
    vden->add_option("--n-max", n_max);

    // surface ------------------------------------------------------------
    auto* surf = app.add_subcommand("surface", "residuals of the entropy approximation");
    surf->require_subcommand(1);
    auto* sn2 = surf->add_subcommand("n2", "plane residuals as csv");
    sn2->add_option("--kind", kind, "mult-mult | mult-shift")->required();
    sn2->add_option("--omega1", omega1_path);
    sn2->add_option("--p1", p1);
    sn2->add_option("--omega2", omega2_path);
    sn2->add_option("--p2", p2);
    sn2->add_option("--omega", omega_path);
    sn2->add_option("--p", p);
    sn2->add_option("--x", x_path);
    sn2->add_option("--points", points_str, "geometric:<a>..<b> or m1xn1,m2xn2,...");

    auto* stree = surf->add_subcommand("tree", "tree residuals as csv");
    stree->add_option("--kind", kind, "mult-mult | mult-shift")->required();
    stree->add_option("--omega1", omega1_path);
    stree->add_option("--p1", p1);
    stree->add_option("--omega2", omega2_path);
    stree->add_option("--p2", p2);
    stree->add_option("--omega", omega_path);
    stree->add_option("--p", p);
    stree->add_option("--x", x_path);
    stree->add_option("--n-max", n_max);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitBadInput;
    }

    if (cbox->parsed()) {
        BoxQuery q;
        q.dims = parse_dims(dims_str);
        for (const auto& path : factor_paths) q.factors.push_back(load_subshift(path));
        Json j;
        j["count"] = (oracle ? brute_force_box(q) : count_box(q)).str();
        j["method"] = oracle ? "oracle" : "transfer";
        emit(j);
    } else if (cwords->parsed()) {
        Json j;
        j["n"] = n;
        j["count"] = count_words(load_subshift(spec_path), n).str();
        emit(j);
    } else if (cshape->parsed()) {
        auto params = parse_tree_params(mode, p1, p2);
        auto shape = build_reshaped(parse_root(root_str), k, params);
        auto cnt = count_shape(shape, load_subshift(omega1_path), load_subshift(omega2_path));
        Json j;
        j["root"] = root_str;
        j["k"] = k;
        j["size"] = shape.size();
        j["count"] = cnt.count.str();
        j["log_count"] = cnt.log_count;
        emit(j);
    } else if (en2->parsed()) {
        emit(estimate_json(entropy_n2_mult_mult(load_subshift(omega1_path),
                                                load_subshift(omega2_path), p1, p2, tol_n2)));
    } else if (en2m->parsed()) {
        emit(estimate_json(
            entropy_n2_mult_shift(load_subshift(omega_path), p, load_subshift(x_path), tol_n2)));
    } else if (etree->parsed()) {
        emit(estimate_json(entropy_tree_mult_mult(load_subshift(omega1_path),
                                                  load_subshift(omega2_path), p1, p2, tol_tree)));
    } else if (etreem->parsed()) {
        emit(estimate_json(entropy_tree_mult_shift(load_subshift(omega_path), p,
                                                   load_subshift(x_path), tol_tree)));
    } else if (end_->parsed()) {
        std::vector<MultiplicativeFactor> mults;
        for (const auto& arg : mult_args) {
            auto colon = arg.rfind(':');
            if (colon == std::string::npos) throw BadInput("--mult needs <file.json>:<p>");
            mults.push_back(
                {load_subshift(arg.substr(0, colon)), std::stoi(arg.substr(colon + 1))});
        }
        std::vector<SubshiftSpec> shifts;
        for (const auto& path : shift_paths) shifts.push_back(load_subshift(path));
        emit(estimate_json(entropy_nd(mults, shifts, tol_nd)));
    } else if (parts->parsed()) {
        Json j;
        j["n"] = n;
        if (kind == "single") {
            j["count"] = count_single(p, n).str();
            if (enumerate) {
                Json lists = Json::array();
                for (const auto& c : enumerate_single(p, n).parts_lists) lists.push_back(c);
                j["parts"] = std::move(lists);
            }
        } else if (kind == "alternating") {
            j["count"] = count_alternating(p1, p2, n).str();
            if (enumerate) {
                Json lists = Json::array();
                for (const auto& c : enumerate_alternating(p1, p2, n).parts_lists) {
                    Json e = Json::array();
                    for (const auto& part : c) e.push_back(part.value);
                    lists.push_back(std::move(e));
                }
                j["parts"] = std::move(lists);
            }
        } else {
            throw BadInput("partitions: kind must be 'single' or 'alternating'");
        }
        emit(j);
    } else if (tshape->parsed()) {
        emit(shape_json(build_reshaped(parse_root(root_str), k, parse_tree_params(mode, p1, p2))));
    } else if (vdec->parsed()) {
        auto params = parse_tree_params(mode, p1, p2);
        auto dec = decompose_tree(n, params, /*verify=*/true);
        Json j;
        j["n"] = n;
        j["mode"] = mode;
        Json comps = Json::array();
        for (const auto& c : dec.components) {
            Json e;
            e["root"] = root_string(c.shape.root_type);
            e["budget"] = c.shape.budget;
            e["multiplicity"] = c.multiplicity;
            e["size"] = c.shape.size();
            comps.push_back(std::move(e));
        }
        j["components"] = std::move(comps);
        j["total"] = dec.total_vertices().str();
        j["ok"] = true;
        emit(j);
    } else if (vbij->parsed()) {
        long long checked = 0;
        if (kind == "alternating") {
            TreeParams params{TreeMode::TwoSided, p1, p2};
            for (long long t = 1; t <= k; ++t)
                for (const auto& c : enumerate_alternating(p1, p2, t).parts_lists) {
                    if (word_to_alternating_parts(alternating_parts_to_word(c, params), params) !=
                        c)
                        throw VerificationFailed("alternating round trip failed");
                    ++checked;
                }
        } else if (kind == "single") {
            TreeParams params{TreeMode::OneSidedLeft, p, 2};
            for (long long t = 1; t <= k; ++t)
                for (const auto& c : enumerate_single(p, t).parts_lists) {
                    if (word_to_single_parts(single_parts_to_word(c, params), params) != c)
                        throw VerificationFailed("single round trip failed");
                    ++checked;
                }
        } else {
            throw BadInput("bijection: kind must be 'single' or 'alternating'");
        }
        Json j;
        j["kind"] = kind;
        j["k"] = k;
        j["checked"] = checked;
        j["ok"] = true;
        emit(j);
    } else if (vorc->parsed()) {
        Json j;
        if (kind == "box") {
            BoxQuery q;
            q.dims = parse_dims(dims_str);
            for (const auto& path : factor_paths) q.factors.push_back(load_subshift(path));
            BigInt a = count_box(q), b = brute_force_box(q);
            if (a != b)
                throw VerificationFailed("box oracle mismatch: " + a.str() + " vs " + b.str());
            j["kind"] = "box";
            j["count"] = a.str();
        } else if (kind == "tree") {
            auto params = parse_tree_params(mode, p1, p2);
            auto f1 = load_subshift(omega1_path);
            auto f2 = load_subshift(omega2_path);
            BigInt prod = 1;
            for (const auto& c : decompose_tree(n, params).components)
                prod *= big_pow(count_shape(c.shape, f1, f2).count,
                                (unsigned long long)c.multiplicity);
            BigInt bf = brute_force_tree(n, params, f1, f2);
            if (prod != bf)
                throw VerificationFailed("tree oracle mismatch: " + prod.str() + " vs " + bf.str());
            j["kind"] = "tree";
            j["n"] = n;
            j["count"] = bf.str();
        } else {
            throw BadInput("oracle: kind must be 'box' or 'tree'");
        }
        j["ok"] = true;
        emit(j);
    } else if (vden->parsed()) {
        auto moduli_ll = parse_dims(dims_str);
        std::vector<int> moduli(moduli_ll.begin(), moduli_ll.end());
        d = int(moduli.size());
        auto ratios = density_check_d(d, moduli, n_max);
        bool decreasing = true;
        for (std::size_t i = 2; i + 1 < ratios.size(); ++i)
            if (ratios[i + 1] >= ratios[i]) decreasing = false;
        Json j;
        j["d"] = d;
        j["ratios"] = ratios;
        j["decreasing"] = decreasing;
        emit(j);
    } else if (sn2->parsed()) {
        auto pts = parse_points(points_str);
        if (kind == "mult-mult")
            print_residual_csv(residual_n2_mult_mult(load_subshift(omega1_path),
                                                     load_subshift(omega2_path), p1, p2, pts),
                               false);
        else if (kind == "mult-shift")
            print_residual_csv(
                residual_n2_mult_shift(load_subshift(omega_path), p, load_subshift(x_path), pts),
                false);
        else
            throw BadInput("surface n2: kind must be 'mult-mult' or 'mult-shift'");
    } else if (stree->parsed()) {
        if (kind == "mult-mult")
            print_residual_csv(residual_tree_mult_mult(load_subshift(omega1_path),
                                                       load_subshift(omega2_path), p1, p2, n_max),
                               true);
        else if (kind == "mult-shift")
            print_residual_csv(residual_tree_mult_shift(load_subshift(omega_path), p,
                                                        load_subshift(x_path), n_max),
                               true);
        else
            throw BadInput("surface tree: kind must be 'mult-mult' or 'mult-shift'");
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const multent::VerificationFailed& e) {
        std::fprintf(stderr, "verification failed: %s\n", e.what());
        return kExitVerifyFailed;
    } catch (const multent::CapExceeded& e) {
        std::fprintf(stderr, "cap exceeded: %s\n", e.what());
        return kExitCapExceeded;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    }
}

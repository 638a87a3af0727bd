#include "ndc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <random>

#include <CLI11.hpp>

#include "ndc/algebra.hpp"
#include "ndc/compressions.hpp"
#include "ndc/constructions.hpp"
#include "ndc/decomposition.hpp"
#include "ndc/spec_io.hpp"

namespace ndc::cli {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string upper_text(const NormBound& b) { return b.upper ? num(*b.upper) : "inf"; }

std::string block_set(const BlockSet& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) {
        out += (k ? "," : "") + std::to_string(s[k].value);
    }
    return out + "}";
}

std::uint64_t max_depth() {
    const char* env = std::getenv("NDC_MAX_DEPTH");
    if (env == nullptr || *env == '\0') {
        return 4096;
    }
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0 || env[0] == '-') {
        throw PreconditionError(std::string("NDC_MAX_DEPTH must be a positive integer, got '") + env + "'");
    }
    return v;
}

void check_depth(std::uint64_t depth) {
    if (depth == 0) {
        throw PreconditionError("--depth must be positive");
    }
    const std::uint64_t cap = max_depth();
    if (depth > cap) {
        throw PreconditionError("--depth " + std::to_string(depth) + " exceeds NDC_MAX_DEPTH=" + std::to_string(cap));
    }
}

// Options shared by every command that takes --op.
struct OpOptions {
    std::string op;
    double lambda = 0.75;
    double base = 0.5;
    std::uint64_t index = 0;
    std::uint64_t group = 0;
    std::uint64_t unit_i = 0;
    std::uint64_t unit_j = 1;
    std::string partition;
};

void add_op_options(CLI::App* cmd, OpOptions& o) {
    cmd->add_option("--op", o.op, "JSON spec file or demo:NAME")->required();
    cmd->add_option("--lambda", o.lambda, "demo:row-isometry coefficient");
    cmd->add_option("--base", o.base, "demo:minf-geometric base");
    cmd->add_option("--index", o.index, "demo:coarse-projection block");
    cmd->add_option("--group", o.group, "demo:matrix-unit coarse group");
    cmd->add_option("--i", o.unit_i, "demo:matrix-unit target sub-block");
    cmd->add_option("--j", o.unit_j, "demo:matrix-unit source sub-block");
    cmd->add_option("--partition", o.partition, "uniform:W or coarse:W (cantor_coarsen of uniform:W)");
}

Partition parse_partition_flag(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    if (colon == std::string::npos || (kind != "uniform" && kind != "coarse")) {
        throw SpecError("--partition", "expected uniform:W or coarse:W, got '" + text + "'");
    }
    const std::string w = text.substr(colon + 1);
    char* end = nullptr;
    const unsigned long long width = std::strtoull(w.c_str(), &end, 10);
    if (w.empty() || *end != '\0' || width == 0 || w[0] == '-') {
        throw SpecError("--partition", "width must be a positive integer, got '" + w + "'");
    }
    const Partition u = Partition::uniform(width);
    return kind == "uniform" ? u : Partition::cantor_coarsen(u);
}

OperatorSpec resolve(const OpOptions& o) {
    if (o.op.rfind("demo:", 0) != 0) {
        OperatorSpec s = load_operator_spec(o.op);
        if (!o.partition.empty()) {
            s.part = parse_partition_flag(o.partition);
        }
        return s;
    }
    const std::string name = o.op.substr(5);
    const bool minf = name == "minf-geometric" || name == "minf-inverse-sum";
    const Partition part = o.partition.empty() ? (minf ? Partition::uniform(1) : Partition::cantor_coarsen(Partition::uniform(1)))
                                               : parse_partition_flag(o.partition);
    auto coarse = [&] {
        if (part.kind() != Partition::Kind::CantorCoarsen) {
            throw SpecError("--partition", name + " needs a coarse partition");
        }
    };
    if (name == "row-isometry") {
        coarse();
        if (o.lambda == 0.0 || !std::isfinite(o.lambda)) {
            throw SpecError("--lambda", "must be finite and nonzero");
        }
        return {row_isometry(Complex(o.lambda, 0.0), part), part};
    }
    if (name == "minf-geometric") {
        if (!(o.base > 0.0 && o.base < 1.0)) {
            throw SpecError("--base", "must lie in (0, 1)");
        }
        return {minf_sample(Geometric{o.base}), part};
    }
    if (name == "minf-inverse-sum") {
        return {minf_sample(InverseSum{}), part};
    }
    if (name == "coarse-projection") {
        coarse();
        return {coarse_projection(part, BlockId(o.index)), part};
    }
    if (name == "matrix-unit") {
        coarse();
        return {matrix_unit(part, BlockId(o.group), o.unit_i, o.unit_j), part};
    }
    throw SpecError("--op", "unknown demo operator '" + name + "'");
}

int cmd_hooks(const OpOptions& o, std::uint64_t horizon, std::uint64_t depth, const std::string& format,
              std::ostream& out) {
    if (format != "tsv") {
        throw SpecError("--format", "only tsv is supported");
    }
    if (horizon == 0) {
        throw PreconditionError("--horizon must be at least 1");
    }
    check_depth(depth);
    const OperatorSpec s = resolve(o);
    for (const auto& h : hook_sequence(s.op, s.part, BlockId(horizon), depth)) {
        out << h.i.value << '\t' << num(h.bound.lower) << '\t' << upper_text(h.bound) << '\n';
    }
    return kOk;
}

std::string verdict_line(const MembershipVerdict& v) {
    if (std::holds_alternative<CertifiedIn>(v)) {
        return "CERTIFIED_IN";
    }
    if (const auto* o = std::get_if<CertifiedOut>(&v)) {
        return "CERTIFIED_OUT eps=" + num(o->eps);
    }
    const auto& e = std::get<Empirical>(v);
    return std::string(e.in ? "EMPIRICAL_IN" : "EMPIRICAL_OUT") + " maxtail=" + num(e.max_tail_hook_lower);
}

int cmd_membership(const OpOptions& o, double eps, std::uint64_t horizon, std::uint64_t depth, std::ostream& out) {
    if (!(eps > 0.0)) {
        throw PreconditionError("--eps must be positive");
    }
    if (horizon == 0) {
        throw PreconditionError("--horizon must be at least 1");
    }
    check_depth(depth);
    const OperatorSpec s = resolve(o);
    const MembershipVerdict v = membership(s.op, s.part, eps, BlockId(horizon), depth);
    out << verdict_line(v) << '\n';
    if (std::holds_alternative<CertifiedIn>(v)) {
        return kOk;
    }
    return std::holds_alternative<CertifiedOut>(v) ? kCertifiedOutOrWitness : kEmpirical;
}

int cmd_norm(const OpOptions& o, std::uint64_t levels, std::uint64_t depth, std::ostream& out) {
    if (levels == 0) {
        throw PreconditionError("--levels must be at least 1");
    }
    check_depth(depth);
    const OperatorSpec s = resolve(o);
    const auto r = norm_via_compressions(s.op, s.part, CompressionSchedule::prefixes(levels, depth));
    for (std::size_t k = 0; k < r.points.size(); ++k) {
        out << k + 1 << '\t' << num(r.points[k]) << '\n';
    }
    out << "estimate\t" << num(r.estimate.lower) << '\t' << upper_text(r.estimate) << '\n';
    return kOk;
}

int cmd_positivity(const OpOptions& o, std::uint64_t levels, double slack, std::uint64_t depth, std::ostream& out) {
    if (levels == 0) {
        throw PreconditionError("--levels must be at least 1");
    }
    if (!(slack > 0.0)) {
        throw PreconditionError("--slack must be positive");
    }
    check_depth(depth);
    const OperatorSpec s = resolve(o);
    const auto v = positivity_via_compressions(s.op, s.part, CompressionSchedule::prefixes(levels, depth), slack);
    if (const auto* nh = std::get_if<NotHermitian>(&v)) {
        out << "NOT_HERMITIAN row=" << nh->row.value << " col=" << nh->col.value << '\n';
        return kNotHermitian;
    }
    if (const auto* w = std::get_if<NegativeWitness>(&v)) {
        out << "NEGATIVE_WITNESS subset=" << block_set(w->subset) << " min_eig=" << num(w->min_eig)
            << " reduced=" << block_set(w->reduced) << " reduced_min_eig=" << num(w->reduced_min_eig) << '\n';
        return kCertifiedOutOrWitness;
    }
    const auto& p = std::get<PositiveUpTo>(v);
    out << "POSITIVE_UP_TO n=" << p.checked << " worst_min_eig=" << num(p.worst_min_eig) << '\n';
    return kOk;
}

struct Checks {
    std::ostream& out;
    bool all = true;

    void report(bool ok, const std::string& what) {
        out << (ok ? "PASS " : "FAIL ") << what << '\n';
        all = all && ok;
    }
};

int demo_not_ideal(double lambda, std::uint64_t horizon, std::uint64_t depth, double eps, std::ostream& out) {
    const Partition part = Partition::cantor_coarsen(Partition::uniform(1));
    const OperatorRep a = row_isometry(Complex(lambda, 0.0), part);
    const OperatorRep q0 = coarse_projection(part, BlockId(0));
    const OperatorRep q0a = multiply(q0, a);
    Checks c{out};

    BlockSet window;
    for (std::uint64_t b = 0; b < horizon; ++b) {
        window.push_back(BlockId(b));
    }
    c.report(compression(q0a, window, part, depth) == compression(a, window, part, depth),
             "q0*a equals a entrywise on blocks 0.." + std::to_string(horizon - 1) + " at depth " +
                 std::to_string(depth));

    const auto va = membership(a, part, eps, BlockId(horizon), depth);
    const auto* out_a = std::get_if<CertifiedOut>(&va);
    c.report(out_a != nullptr && out_a->eps == std::abs(lambda), "membership(a) " + verdict_line(va));

    const auto vq = membership(q0, part, eps, BlockId(horizon), depth);
    c.report(std::holds_alternative<CertifiedIn>(vq), "membership(q0) " + verdict_line(vq));
    return c.all ? kOk : kCertifiedOutOrWitness;
}

int demo_partitions_differ(std::uint64_t horizon, std::uint64_t depth, double eps, std::ostream& out) {
    const Partition fine = Partition::uniform(1);
    const Partition coarse = Partition::cantor_coarsen(fine);
    const OperatorRep q0 = coarse_projection(coarse, BlockId(0));
    Checks c{out};

    const auto vc = membership(q0, coarse, eps, BlockId(horizon), depth);
    c.report(std::holds_alternative<CertifiedIn>(vc), "coarse partition " + verdict_line(vc));

    const auto vf = membership(q0, fine, eps, BlockId(horizon), depth);
    const auto* o = std::get_if<CertifiedOut>(&vf);
    c.report(o != nullptr && o->eps == 1.0, "fine partition " + verdict_line(vf));
    return c.all ? kOk : kCertifiedOutOrWitness;
}

// Closed form of the i-th hook of the geometric sample: on span{e_i, 1} the
// strip is b^i [[1, sqrt i], [sqrt i, 0]].
double geometric_hook(double b, std::uint64_t i) {
    return std::pow(b, static_cast<double>(i)) * (1.0 + std::sqrt(1.0 + 4.0 * static_cast<double>(i))) / 2.0;
}

int demo_minf(double b, std::uint64_t horizon, std::uint64_t depth, double eps, std::ostream& out) {
    const Partition part = Partition::uniform(1);
    const OperatorRep a = minf_sample(Geometric{b});
    Checks c{out};

    const auto v = membership(a, part, eps, BlockId(horizon), depth);
    c.report(std::holds_alternative<CertifiedIn>(v), "geometric(" + num(b) + ") " + verdict_line(v));

    const double h1 = hook(a, part, BlockId(1), depth).bound.lower;
    c.report(std::abs(h1 - geometric_hook(b, 1)) <= 1e-8,
             "hook 1 lower " + num(h1) + " vs closed form " + num(geometric_hook(b, 1)));

    bool decreasing = true;
    double prev = h1;
    for (std::uint64_t i = 2; i <= 8; ++i) {
        const double h = hook(a, part, BlockId(i), depth).bound.lower;
        decreasing = decreasing && h < prev;
        prev = h;
    }
    c.report(decreasing, "hook lower bounds strictly decreasing for 1 <= i <= 8");
    return c.all ? kOk : kCertifiedOutOrWitness;
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

OperatorRep random_explicit(std::mt19937_64& rng, std::uint64_t n) {
    std::vector<ExplicitEntry> e;
    for (std::uint64_t r = 0; r < n; ++r) {
        for (std::uint64_t c = 0; c < n; ++c) {
            if (unit_draw(rng) < 0.25) {
                const double re = 2.0 * unit_draw(rng) - 1.0;
                const double im = 2.0 * unit_draw(rng) - 1.0;
                e.push_back({BasisIndex(r), BasisIndex(c), Complex(re, im)});
            }
        }
    }
    return OperatorRep::from_entries(e);
}

std::optional<std::string> closure_trial(std::mt19937_64& rng, std::uint64_t depth) {
    constexpr std::uint64_t n = 16;
    const Partition part = Partition::uniform(2);
    const OperatorRep a = random_explicit(rng, n);
    const OperatorRep b = random_explicit(rng, n);
    const OperatorRep sum = add(a, b);
    const OperatorRep prod = multiply(a, b);
    const OperatorRep adj = adjoint(a);

    for (std::uint64_t r = 0; r < n; ++r) {
        for (std::uint64_t c = 0; c < n; ++c) {
            const BasisIndex R(r);
            const BasisIndex C(c);
            if (sum.entry_at(R, C) != a.entry_at(R, C) + b.entry_at(R, C)) {
                return "sum entry (" + std::to_string(r) + ", " + std::to_string(c) + ")";
            }
            if (adj.entry_at(R, C) != std::conj(a.entry_at(C, R))) {
                return "adjoint entry (" + std::to_string(r) + ", " + std::to_string(c) + ")";
            }
            Complex dense(0.0, 0.0);
            for (std::uint64_t k = 0; k < n; ++k) {
                dense += a.entry_at(R, BasisIndex(k)) * b.entry_at(BasisIndex(k), C);
            }
            if (std::abs(prod.entry_at(R, C) - dense) > 1e-12 * (1.0 + std::abs(dense))) {
                return "product entry (" + std::to_string(r) + ", " + std::to_string(c) + ")";
            }
        }
    }

    const BlockId horizon(n / 2 + 4);
    const std::pair<const char*, const OperatorRep*> members[] = {{"sum", &sum}, {"product", &prod}, {"adjoint", &adj}};
    for (const auto& [name, op] : members) {
        if (!std::holds_alternative<CertifiedIn>(membership(*op, part, 1e-6, horizon, depth))) {
            return std::string(name) + " is not certified in";
        }
        const auto hooks = hook_sequence(*op, part, horizon, depth);
        for (std::uint64_t i = n / 2; i < horizon.value; ++i) {
            if (hooks[i].bound.lower != 0.0 || hooks[i].bound.upper != 0.0) {
                return std::string(name) + " hook " + std::to_string(i) + " is not exactly 0";
            }
        }
    }
    for (std::uint64_t i = 0; i < n / 2; ++i) {
        const double ha = hook(a, part, BlockId(i), depth).bound.lower;
        const double hs = hook(adj, part, BlockId(i), depth).bound.lower;
        if (std::abs(ha - hs) > 1e-12) {
            return "adjoint hook " + std::to_string(i) + " differs";
        }
    }
    return std::nullopt;
}

// Product of two geometric samples: every hook below the certified product tail.
bool closure_geometric(std::uint64_t horizon, std::uint64_t depth, std::ostream& out) {
    const Partition part = Partition::uniform(1);
    const OperatorRep p = multiply(minf_sample(Geometric{0.5}), minf_sample(Geometric{0.7}));
    bool ok = p.tail_vanishes();
    double prev = std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < horizon; ++i) {
        const double h = hook(p, part, BlockId(i), depth).bound.lower;
        const double d = *p.tail_bound(part.first_index(BlockId(i)).value);
        out << "geometric\t" << i << '\t' << num(h) << '\t' << num(d) << '\n';
        ok = ok && h <= d && d <= prev;
        prev = d;
    }
    return ok;
}

int cmd_verify(const std::string& what, std::uint64_t trials, std::uint64_t seed, std::uint64_t horizon,
               std::uint64_t depth, std::ostream& out) {
    if (what != "closure") {
        throw SpecError("verify", "unknown suite '" + what + "'");
    }
    check_depth(depth);
    std::mt19937_64 rng(seed);
    std::uint64_t passed = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        if (const auto why = closure_trial(rng, depth)) {
            out << "FAIL trial " << t << ": " << *why << '\n';
        } else {
            ++passed;
        }
    }
    const bool geo = closure_geometric(horizon, depth, out);
    if (!geo) {
        out << "FAIL geometric product hooks exceed the dominating sequence\n";
    }
    out << "PASS " << passed << '/' << trials << '\n';
    return passed == trials && geo ? kOk : kCertifiedOutOrWitness;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Block decompositions of operators on l2(N)", "ndc"};
    app.require_subcommand(1);

    OpOptions op;
    std::uint64_t horizon = 32;
    std::uint64_t depth = kDefaultDepth;
    std::uint64_t levels = 8;
    double eps = 1e-6;
    double slack = 1e-9;
    std::string format = "tsv";
    std::string demo_name;
    std::string suite;
    std::uint64_t trials = 50;
    std::uint64_t seed = 7;

    auto* hooks = app.add_subcommand("hooks", "hook norm bounds i, lower, upper");
    add_op_options(hooks, op);
    hooks->add_option("--horizon", horizon);
    hooks->add_option("--depth", depth);
    hooks->add_option("--format", format);

    auto* mem = app.add_subcommand("membership", "three-valued membership verdict");
    add_op_options(mem, op);
    mem->add_option("--eps", eps);
    mem->add_option("--horizon", horizon);
    mem->add_option("--depth", depth);

    auto* norm = app.add_subcommand("norm", "norms of prefix compressions");
    add_op_options(norm, op);
    norm->add_option("--levels", levels);
    norm->add_option("--depth", depth);

    auto* pos = app.add_subcommand("positivity", "positivity along prefix compressions");
    add_op_options(pos, op);
    pos->add_option("--levels", levels);
    pos->add_option("--slack", slack);
    pos->add_option("--depth", depth);

    auto* demo = app.add_subcommand("demo", "run a demonstration");
    demo->add_option("name", demo_name)->required()->check(CLI::IsMember({"not-ideal", "partitions-differ", "minf"}));
    demo->add_option("--lambda", op.lambda);
    demo->add_option("--base", op.base);
    demo->add_option("--eps", eps);
    demo->add_option("--horizon", horizon);
    demo->add_option("--depth", depth);

    auto* verify = app.add_subcommand("verify", "randomized property suite");
    verify->add_option("suite", suite)->required();
    verify->add_option("--trials", trials);
    verify->add_option("--seed", seed);
    verify->add_option("--horizon", horizon);
    verify->add_option("--depth", depth);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "ndc: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (hooks->parsed()) {
            return cmd_hooks(op, horizon, depth, format, out);
        }
        if (mem->parsed()) {
            return cmd_membership(op, eps, horizon, depth, out);
        }
        if (norm->parsed()) {
            return cmd_norm(op, levels, depth, out);
        }
        if (pos->parsed()) {
            return cmd_positivity(op, levels, slack, depth, out);
        }
        if (demo->parsed()) {
            check_depth(depth);
            if (horizon == 0) {
                throw PreconditionError("--horizon must be at least 1");
            }
            if (demo_name == "not-ideal") {
                return demo_not_ideal(op.lambda, horizon, depth, eps, out);
            }
            if (demo_name == "partitions-differ") {
                return demo_partitions_differ(horizon, depth, eps, out);
            }
            return demo_minf(op.base, horizon, depth, eps, out);
        }
        return cmd_verify(suite, trials, seed, horizon, depth, out);
    } catch (const SpecError& e) {
        err << "ndc: " << e.what() << '\n';
        return kUsage;
    } catch (const PreconditionError& e) {
        err << "ndc: " << e.what() << '\n';
        return kUsage;
    } catch (const RangeError& e) {
        err << "ndc: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "ndc: " << e.what() << '\n';
        return kSoftware;
    }
}

}  // namespace ndc::cli

#include "knr/io.hpp"

#include "knr/krein.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace knr::io {

namespace {

double parse_number(const json& v, const std::string& where) {
    if (!v.is_number())
        throw StructureError(where + ": expected a number");
    return v.get<double>();
}

Complex parse_complex_string(const std::string& s, const std::string& where) {
    const std::string err = where + ": cannot parse complex literal '" + s + "'";
    if (s.empty())
        throw StructureError(err);
    std::string body = s;
    bool has_i = false;
    if (body.back() == 'i' || body.back() == 'I') {
        has_i = true;
        body.pop_back();
    }
    if (!has_i) {
        try {
            std::size_t used = 0;
            const double re = std::stod(body, &used);
            if (used != body.size())
                throw StructureError(err);
            return Complex(re, 0.0);
        } catch (const std::exception&) {
            throw StructureError(err);
        }
    }
    // find the split sign of "a+bi" / "a-bi": the last +/- not preceded by e/E
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    std::string re_part, im_part;
    if (split == std::string::npos) {
        re_part = "0";
        im_part = body;
    } else {
        re_part = body.substr(0, split);
        im_part = body.substr(split);
    }
    if (im_part.empty() || im_part == "+")
        im_part = "1";
    else if (im_part == "-")
        im_part = "-1";
    try {
        std::size_t used = 0;
        const double re = std::stod(re_part, &used);
        if (used != re_part.size())
            throw StructureError(err);
        const double im = std::stod(im_part, &used);
        if (used != im_part.size())
            throw StructureError(err);
        return Complex(re, im);
    } catch (const std::exception&) {
        throw StructureError(err);
    }
}

std::vector<Complex> parse_complex_array(const json& v, const std::string& where) {
    if (!v.is_array())
        throw StructureError(where + ": expected an array");
    std::vector<Complex> out;
    std::size_t k = 0;
    for (const auto& item : v)
        out.push_back(parse_complex(item, where + "[" + std::to_string(k++) + "]"));
    return out;
}

} // namespace

Complex parse_complex(const json& v, const std::string& where) {
    if (v.is_number())
        return Complex(v.get<double>(), 0.0);
    if (v.is_string())
        return parse_complex_string(v.get<std::string>(), where);
    if (v.is_array()) {
        if (v.size() != 2)
            throw StructureError(where + ": complex entries need exactly [re, im]");
        return Complex(parse_number(v[0], where + "[0]"), parse_number(v[1], where + "[1]"));
    }
    throw StructureError(where + ": expected number, [re, im] pair, or \"a+bi\" string");
}

std::pair<CMatrix, Metric> ParsedInput::materialize() const {
    if (dense)
        return *dense;
    if (tridiagonal)
        return {tridiagonal->to_matrix(), tridiagonal->metric()};
    throw StructureError("empty parsed input");
}

ParsedInput parse_input_text(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw StructureError(origin + ": " + e.what());
    }
    if (!root.is_object())
        throw StructureError(origin + ": top level must be an object");
    if (!root.contains("kind") || !root["kind"].is_string())
        throw StructureError(origin + ": missing string field 'kind'");
    const std::string kind = root["kind"].get<std::string>();

    ParsedInput parsed;
    if (kind == "tridiagonal") {
        for (const char* field : {"order", "a", "b", "c"})
            if (!root.contains(field))
                throw StructureError(origin + ": tridiagonal input needs field '" +
                                     field + "'");
        TridiagonalSpec spec;
        if (!root["order"].is_number_integer() || root["order"].get<int>() < 3)
            throw StructureError(origin + ".order: expected an integer >= 3");
        spec.order = root["order"].get<std::size_t>();
        spec.a = parse_number(root["a"], origin + ".a");
        spec.b = parse_complex_array(root["b"], origin + ".b");
        spec.c = parse_complex_array(root["c"], origin + ".c");
        try {
            spec.validate();
        } catch (const StructureError& e) {
            throw StructureError(origin + ": " + e.what());
        }
        parsed.tridiagonal = std::move(spec);
        return parsed;
    }
    if (kind == "dense") {
        for (const char* field : {"J", "A"})
            if (!root.contains(field))
                throw StructureError(origin + ": dense input needs field '" + field + "'");
        if (!root["J"].is_array())
            throw StructureError(origin + ".J: expected an array of +-1");
        std::vector<int> signs;
        for (const auto& s : root["J"]) {
            if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1))
                throw StructureError(origin + ".J: metric entries must be +-1");
            signs.push_back(s.get<int>());
        }
        const Metric metric{signs};
        const std::size_t n = signs.size();
        if (!root["A"].is_array() || root["A"].size() != n)
            throw StructureError(origin + ".A: expected " + std::to_string(n) + " rows");
        CMatrix a(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& row = root["A"][i];
            if (!row.is_array() || row.size() != n)
                throw StructureError(origin + ".A[" + std::to_string(i) + "]: expected " +
                                     std::to_string(n) + " entries");
            for (std::size_t j = 0; j < n; ++j)
                a(i, j) = parse_complex(row[j], origin + ".A[" + std::to_string(i) + "][" +
                                                    std::to_string(j) + "]");
        }
        if (!a.finite())
            throw StructureError(origin + ".A: entries must be finite");
        parsed.dense = std::make_pair(std::move(a), metric);
        return parsed;
    }
    throw StructureError(origin + ".kind: expected 'tridiagonal' or 'dense'");
}

ParsedInput parse_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw StructureError("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_input_text(buf.str(), path);
}

void JobSpec::validate() const {
    if (grid < 16)
        throw StructureError("grid size must be >= 16");
    if (samples < 1)
        throw StructureError("sample count must be >= 1");
    if (!(tol > 0.0))
        throw StructureError("tolerance must be positive");
}

json complex_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

json hyperbola_json(const Hyperbola& h) {
    json j;
    j["center"] = complex_json(h.center);
    j["gamma"] = h.gamma;
    j["semi_transverse"] = h.semi_transverse;
    j["semi_nontransverse"] = h.semi_nontransverse;
    j["foci"] = json::array({complex_json(h.foci[0]), complex_json(h.foci[1])});
    return j;
}

json classification_json(const RangeClassification& rc) {
    json j;
    j["kind"] = to_string(rc.kind);
    j["evidence"] = rc.evidence;
    if (rc.disc)
        j["disc"] = hyperbola_json(*rc.disc);
    if (rc.outer)
        j["outer"] = hyperbola_json(*rc.outer);
    if (rc.inner)
        j["inner"] = hyperbola_json(*rc.inner);
    if (rc.h_plus)
        j["h_plus"] = hyperbola_json(*rc.h_plus);
    if (rc.h_minus)
        j["h_minus"] = hyperbola_json(*rc.h_minus);
    if (rc.kind == RangeKind::DegenerateRays)
        j["ray_endpoints"] = json::array(
            {complex_json(rc.ray_endpoints[0]), complex_json(rc.ray_endpoints[1])});
    if (rc.kind == RangeKind::Point)
        j["point"] = complex_json(rc.point_value);
    if (!rc.flats.empty()) {
        json flats = json::array();
        for (const auto& f : rc.flats) {
            json seg;
            seg["a"] = complex_json(f.a);
            seg["b"] = complex_json(f.b);
            seg["theta"] = f.theta;
            flats.push_back(seg);
        }
        j["flats"] = flats;
    }
    if (!rc.corners.empty()) {
        json corners = json::array();
        for (const auto& c : rc.corners)
            corners.push_back(complex_json(c));
        j["corners"] = corners;
    }
    if (rc.curve)
        j["curve_points"] = rc.curve->points.size();
    return j;
}

json containment_json(const ContainmentReport& rep) {
    json j;
    j["verdict"] = rep.verdict;
    j["worst_violation"] = rep.worst_violation;
    j["violations"] = rep.violation_count;
    j["checked"] = rep.checked;
    j["note"] = rep.note;
    return j;
}

std::string dump_report(const json& report) {
    return report.dump(2) + "\n";
}

namespace {

std::string csv_num(double x) {
    return format_double(x);
}

json certificate_json(const TridiagonalSpec& spec) {
    switch (spec.order) {
    case 3: {
        const Certificate3 c = certify_order3(spec);
        json j;
        j["order"] = 3;
        j["delta"] = complex_json(c.delta);
        j["trace_adj"] = c.trace_adj;
        j["third_eigenvalue"] = c.third_eigenvalue;
        j["verdict"] = c.verdict;
        j["at_boundary"] = c.at_boundary;
        if (c.hyperbola)
            j["hyperbola"] = hyperbola_json(*c.hyperbola);
        return j;
    }
    case 4: {
        const Certificate4 c = certify_order4(spec);
        json j;
        j["order"] = 4;
        j["delta"] = complex_json(c.delta);
        j["delta_plus"] = complex_json(c.delta_plus);
        j["delta_minus"] = complex_json(c.delta_minus);
        j["m"] = c.m;
        j["m_plus"] = c.m_plus;
        j["m_minus"] = c.m_minus;
        j["pairing_swapped"] = c.pairing_swapped;
        j["b2"] = complex_json(c.b2);
        j["verdict"] = c.verdict;
        j["subcase"] = c.subcase == Order4Subcase::B2ZeroDisc
                           ? "b2zero-disc"
                           : c.subcase == Order4Subcase::Bihyperbolic ? "bihyperbolic-a"
                                                                      : "not-certified";
        if (c.h_plus)
            j["h_plus"] = hyperbola_json(*c.h_plus);
        if (c.h_minus)
            j["h_minus"] = hyperbola_json(*c.h_minus);
        return j;
    }
    case 5: {
        const Certificate5 c = certify_order5(spec);
        json j;
        j["order"] = 5;
        j["delta1"] = complex_json(c.delta1);
        j["delta2"] = complex_json(c.delta2);
        j["m1"] = c.m1;
        j["m2"] = c.m2;
        j["verdict"] = c.verdict;
        if (c.h1)
            j["h1"] = hyperbola_json(*c.h1);
        if (c.h1_degenerate)
            j["h1_points"] = json::array(
                {complex_json(c.h1_points[0]), complex_json(c.h1_points[1])});
        if (c.h2)
            j["h2"] = hyperbola_json(*c.h2);
        return j;
    }
    case 6: {
        const Certificate6 c = certify_order6(spec);
        json j;
        j["order"] = 6;
        j["b3_zero"] = c.b3_zero;
        j["focus_sq"] = complex_json(c.focus_sq);
        j["trace_s"] = c.trace_s;
        j["verdict"] = c.verdict;
        if (c.k)
            j["k"] = hyperbola_json(*c.k);
        if (c.cubic_factors) {
            auto dump_cubic = [](const CubicForm& f) {
                json arr = json::array();
                for (const auto& coef : f.coef)
                    arr.push_back(complex_json(coef));
                return arr;
            };
            j["cubic_factors"] = json::array({dump_cubic(c.cubic_factors->first),
                                              dump_cubic(c.cubic_factors->second)});
        }
        return j;
    }
    default:
        throw StructureError("unsupported order " + std::to_string(spec.order) +
                             " (certificates exist for orders 3-6)");
    }
}

bool certificate_verdict(const json& cert) {
    return cert.at("verdict").get<bool>();
}

std::vector<Hyperbola> certified_hyperbolas(const TridiagonalSpec& spec, Complex rot,
                                            Complex shift) {
    std::vector<Hyperbola> out;
    auto add = [&](const std::optional<Hyperbola>& h) {
        if (h)
            out.push_back(h->transformed(rot, shift));
    };
    switch (spec.order) {
    case 3:
        add(certify_order3(spec).hyperbola);
        break;
    case 4: {
        const auto c = certify_order4(spec);
        add(c.h_plus);
        if (std::abs(c.b2) > 0.0)
            add(c.h_minus);
        break;
    }
    case 5: {
        const auto c = certify_order5(spec);
        add(c.h1);
        add(c.h2);
        break;
    }
    case 6:
        add(certify_order6(spec).k);
        break;
    default:
        break;
    }
    return out;
}

} // namespace

RunResult run_certify(const JobSpec& job) {
    job.validate();
    const ParsedInput parsed = parse_input(job.input_path);

    TridiagonalSpec spec;
    double tau = 0.0;
    Complex delta(0.0, 0.0);
    if (parsed.tridiagonal) {
        spec = *parsed.tridiagonal;
    } else {
        const auto& [a, metric] = *parsed.dense;
        const NormalForm nf = normal_form(a, metric);
        spec = nf.spec;
        tau = nf.tau;
        delta = nf.delta;
    }
    if (spec.order < 3 || spec.order > 6)
        throw StructureError("unsupported order " + std::to_string(spec.order) +
                             " (certificates exist for orders 3-6)");

    const Complex rot = std::polar(1.0, tau);
    json report;
    report["command"] = "certify";
    report["input"] = job.input_path;
    report["order"] = spec.order;
    report["normal_form"] = {{"tau", tau}, {"delta", complex_json(delta)}};
    report["certificate"] = certificate_json(spec);
    const bool verdict = certificate_verdict(report["certificate"]);
    report["verdict"] = verdict;

    json hyps = json::array();
    for (const auto& h : certified_hyperbolas(spec, rot, delta))
        hyps.push_back(hyperbola_json(h));
    report["hyperbolas"] = hyps;

    // oracle cross-checks: downstream shape, support fit, Monte Carlo containment
    const auto [a_full, metric] = parsed.materialize();
    const RangeClassification rc = classify_range(a_full, metric, job.grid);
    report["classification"] = classification_json(rc);

    json oracle;
    oracle["samples"] = job.samples;
    oracle["seed"] = job.seed;
    const CMatrix t_matrix = spec.to_matrix();
    const Metric t_metric = spec.metric();
    try {
        const ThetaWindow w = omega_window(t_matrix, t_metric, job.grid);
        if (!w.empty) {
            auto [params, residual] = fit_quadratic(t_matrix, t_metric, window_grid(w, 65));
            oracle["fit_residual"] = residual;
            oracle["fit"] = {{"p", params.p}, {"q", params.q}, {"t", params.t}};
        }
    } catch (const StructureError& e) {
        oracle["fit_error"] = e.what();
    }
    if (rc.kind == RangeKind::HyperbolicDisc || rc.kind == RangeKind::BihyperbolicNested ||
        rc.kind == RangeKind::BihyperbolicFlat) {
        const SampleCloud plus = sample_range(a_full, metric, job.samples, +1, job.seed);
        const SampleCloud minus = sample_range(a_full, metric, job.samples, -1, job.seed + 1);
        SampleCloud both = plus;
        both.points.insert(both.points.end(), minus.points.begin(), minus.points.end());
        both.clipped += minus.clipped;
        both.rejected += minus.rejected;
        oracle["containment"] = containment_json(containment_check(both, rc, job.tol));
    }
    report["oracle"] = oracle;

    const bool certified = verdict && (rc.kind == RangeKind::HyperbolicDisc ||
                                       rc.kind == RangeKind::BihyperbolicNested ||
                                       rc.kind == RangeKind::BihyperbolicFlat);
    report["certified"] = certified;

    RunResult result;
    result.report = std::move(report);
    result.exit_code = certified ? 0 : 1;
    return result;
}

RunResult run_classify(const JobSpec& job) {
    job.validate();
    const auto [a, metric] = parse_input(job.input_path).materialize();
    const RangeClassification rc = classify_range(a, metric, job.grid);
    json report;
    report["command"] = "classify";
    report["input"] = job.input_path;
    report["grid"] = job.grid;
    report["classification"] = classification_json(rc);
    RunResult result;
    result.report = std::move(report);
    result.exit_code = 0;
    return result;
}

RunResult run_boundary(const JobSpec& job) {
    job.validate();
    const auto [a, metric] = parse_input(job.input_path).materialize();
    const BoundaryCurve curve = sweep_boundary(a, metric, job.grid);

    RunResult result;
    result.csv = boundary_csv(curve);
    if (!job.svg_path.empty()) {
        std::vector<Complex> eigs = eig_values(a);
        std::vector<Hyperbola> overlays;
        try {
            const RangeClassification rc = classify_range(a, metric, job.grid);
            if (rc.disc)
                overlays.push_back(*rc.disc);
            if (rc.outer)
                overlays.push_back(*rc.outer);
            if (rc.inner)
                overlays.push_back(*rc.inner);
            if (rc.h_plus)
                overlays.push_back(*rc.h_plus);
            if (rc.h_minus)
                overlays.push_back(*rc.h_minus);
        } catch (const StructureError&) {
            // boundary output stands on its own
        }
        result.svg = svg_render(curve, eigs, overlays);
    }
    json report;
    report["command"] = "boundary";
    report["input"] = job.input_path;
    report["grid"] = job.grid;
    report["points"] = curve.points.size();
    report["invalid_thetas"] = curve.invalid_thetas.size();
    result.report = std::move(report);
    result.exit_code = 0;
    return result;
}

RunResult run_sample(const JobSpec& job) {
    job.validate();
    const auto [a, metric] = parse_input(job.input_path).materialize();
    std::vector<SampleCloud> clouds;
    if (metric.plus_count() > 0)
        clouds.push_back(sample_range(a, metric, job.samples, +1, job.seed));
    if (metric.plus_count() < metric.dim())
        clouds.push_back(sample_range(a, metric, job.samples, -1, job.seed + 1));

    RunResult result;
    result.csv = cloud_csv(clouds);
    json report;
    report["command"] = "sample";
    report["input"] = job.input_path;
    report["samples"] = job.samples;
    report["seed"] = job.seed;
    std::size_t clipped = 0, rejected = 0;
    for (const auto& c : clouds) {
        clipped += c.clipped;
        rejected += c.rejected;
    }
    report["clipped"] = clipped;
    report["rejected"] = rejected;
    result.report = std::move(report);
    result.exit_code = 0;
    return result;
}

std::string boundary_csv(const BoundaryCurve& curve) {
    std::string out = "theta,re,im,sign\n";
    for (const auto& p : curve.points) {
        out += csv_num(p.theta);
        out += ',';
        out += csv_num(p.z.real());
        out += ',';
        out += csv_num(p.z.imag());
        out += ',';
        out += (p.sign > 0 ? "1" : "-1");
        out += '\n';
    }
    return out;
}

std::string cloud_csv(const std::vector<SampleCloud>& clouds) {
    std::string out = "re,im,sign\n";
    for (const auto& cloud : clouds)
        for (const auto& [z, sign] : cloud.points) {
            out += csv_num(z.real());
            out += ',';
            out += csv_num(z.imag());
            out += ',';
            out += (sign > 0 ? "1" : "-1");
            out += '\n';
        }
    return out;
}

namespace {

struct Bounds {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool any = false;

    void add(Complex z) {
        if (!any) {
            xmin = xmax = z.real();
            ymin = ymax = z.imag();
            any = true;
            return;
        }
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    }
};

std::string svg_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.8g", x);
    return buf;
}

} // namespace

std::string svg_render(const BoundaryCurve& curve, const std::vector<Complex>& eigenvalues,
                       const std::vector<Hyperbola>& overlays) {
    // Focus the frame on the eigenvalue scale; branches run to infinity and
    // would otherwise drown the picture.
    double focus = 1.0;
    for (const auto& e : eigenvalues)
        focus = std::max(focus, std::abs(e));
    for (const auto& h : overlays)
        focus = std::max({focus, std::abs(h.foci[0]), std::abs(h.foci[1])});
    const double radius_cap = 4.0 * focus;

    Bounds b;
    for (const auto& e : eigenvalues)
        b.add(e);
    for (const auto& p : curve.points)
        if (std::abs(p.z) <= radius_cap)
            b.add(p.z);
    if (!b.any)
        b.add(Complex(0.0, 0.0));
    if (b.xmax - b.xmin < 1e-9) {
        b.xmin -= 1.0;
        b.xmax += 1.0;
    }
    if (b.ymax - b.ymin < 1e-9) {
        b.ymin -= 1.0;
        b.ymax += 1.0;
    }
    const double padx = 0.1 * (b.xmax - b.xmin);
    const double pady = 0.1 * (b.ymax - b.ymin);
    b.xmin -= padx;
    b.xmax += padx;
    b.ymin -= pady;
    b.ymax += pady;

    const double width = b.xmax - b.xmin;
    const double height = b.ymax - b.ymin;
    // y-up: emit y as -y and shift the viewBox accordingly
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
        << svg_num(b.xmin) << " " << svg_num(-b.ymax) << " " << svg_num(width) << " "
        << svg_num(height) << "\" width=\"640\" height=\""
        << svg_num(640.0 * height / width) << "\">\n";
    const double stroke = 0.004 * std::max(width, height);

    // split the sweep into continuous polylines per sign
    auto emit_polylines = [&](int sign, const char* color) {
        std::vector<Complex> run;
        Complex prev(0.0, 0.0);
        bool have_prev = false;
        const double gap_cap = 0.1 * std::hypot(width, height);
        auto flush = [&]() {
            if (run.size() < 2) {
                run.clear();
                return;
            }
            svg << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
                << svg_num(stroke) << "\" points=\"";
            for (std::size_t i = 0; i < run.size(); ++i) {
                if (i)
                    svg << " ";
                svg << svg_num(run[i].real()) << "," << svg_num(-run[i].imag());
            }
            svg << "\"/>\n";
            run.clear();
        };
        for (const auto& p : curve.points) {
            if (p.sign != sign || std::abs(p.z) > radius_cap)
                continue;
            if (have_prev && std::abs(p.z - prev) > gap_cap)
                flush();
            run.push_back(p.z);
            prev = p.z;
            have_prev = true;
        }
        flush();
    };
    emit_polylines(+1, "#1f4fd6"); // positive sign class: blue
    emit_polylines(-1, "#d62718"); // negative sign class: red

    // certified hyperbolas, dashed
    for (const auto& h : overlays) {
        if (h.degenerate())
            continue;
        for (int branch = -1; branch <= 1; branch += 2) {
            svg << "  <polyline fill=\"none\" stroke=\"#555555\" stroke-width=\""
                << svg_num(0.6 * stroke) << "\" stroke-dasharray=\"" << svg_num(3.0 * stroke)
                << "," << svg_num(2.0 * stroke) << "\" points=\"";
            const double tmax = std::acosh(std::max(2.0, radius_cap / h.semi_transverse));
            const int steps = 96;
            for (int k = 0; k <= steps; ++k) {
                const double t = -tmax + 2.0 * tmax * k / steps;
                const Complex canon(branch * h.semi_transverse * std::cosh(t),
                                    h.semi_nontransverse * std::sinh(t));
                const Complex z = h.center + canon * std::polar(1.0, h.gamma);
                if (k)
                    svg << " ";
                svg << svg_num(z.real()) << "," << svg_num(-z.imag());
            }
            svg << "\"/>\n";
        }
    }

    for (const auto& e : eigenvalues)
        svg << "  <circle cx=\"" << svg_num(e.real()) << "\" cy=\"" << svg_num(-e.imag())
            << "\" r=\"" << svg_num(1.5 * stroke) << "\" fill=\"#2a9d2a\"/>\n";

    svg << "</svg>\n";
    return svg.str();
}

} // namespace knr::io

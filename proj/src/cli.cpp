#include "hilbertsep/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hilbertsep/common.hpp"
#include "hilbertsep/embed.hpp"
#include "hilbertsep/geometry.hpp"
#include "hilbertsep/io.hpp"
#include "hilbertsep/oracle.hpp"
#include "hilbertsep/render.hpp"
#include "hilbertsep/svm.hpp"

namespace hilbertsep::cli {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

Vec parse_point(const std::string& text) {
    Vec out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string field = text.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(field, &used));
            if (used != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw Error("Error: cannot parse coordinate \"" + field + "\" in \"" + text + "\"");
        }
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return out;
}

MetricKind metric_kind(const std::string& name) {
    return name == "funk" ? MetricKind::Funk : MetricKind::Hilbert;
}

LabeledDataset labeled_from_csv(const Domain& dom, const io::PointsFile& csv,
                                const std::string& path) {
    if (!csv.has_labels)
        throw Error("Error: " + path + ": a trailing \"label\" column is required here");
    return make_dataset(dom, csv.points, csv.labels);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f.is_open()) throw Error("Error: " + path + ": cannot open file for writing");
    f << text;
}

int run_validate(const std::string& domain_path, std::ostream& out) {
    const Domain dom = io::load_domain(domain_path);
    out << "valid: d=" << dom.dimension << " m=" << dom.num_facets() << "\n";
    out << "interior: (";
    for (int j = 0; j < dom.dimension; ++j)
        out << (j ? ", " : "") << fmt(dom.interior_seed[j]);
    out << ") slack " << fmt(dom.max_slack) << "\n";
    out << "bbox:";
    for (int j = 0; j < dom.dimension; ++j)
        out << (j ? " x [" : " [") << fmt(dom.bbox_lo[j]) << ", " << fmt(dom.bbox_hi[j]) << "]";
    out << "\n";
    return 0;
}

struct DistArgs {
    std::string domain, p, q;
    std::string metric = "hilbert";
    std::string method = "birkhoff";
};

int run_dist(const DistArgs& a, std::ostream& out) {
    const Domain dom = io::load_domain(a.domain);
    const Vec p = parse_point(a.p);
    const Vec q = parse_point(a.q);
    auto eval = [&](DistanceMethod m) {
        if (a.metric == "funk") return funk_distance(dom, p, q, m);
        if (a.metric == "rfunk") return reverse_funk_distance(dom, p, q, m);
        return hilbert_distance(dom, p, q, m);
    };
    if (a.method == "both") {
        const double chord = eval(DistanceMethod::Chord);
        const double birkhoff = eval(DistanceMethod::Birkhoff);
        out << "chord " << fmt(chord) << "\n";
        out << "birkhoff " << fmt(birkhoff) << "\n";
        out << "diff " << fmt(std::abs(chord - birkhoff)) << "\n";
    } else {
        out << fmt(eval(a.method == "chord" ? DistanceMethod::Chord : DistanceMethod::Birkhoff))
            << "\n";
    }
    return 0;
}

struct TrainArgs {
    std::string domain, data, out_path;
    std::string metric = "hilbert";
    std::string normalization = "two";
    double epsilon = 1e-3;
    double C = 1.0;
    bool soft = false;
};

int run_train(const TrainArgs& a, std::ostream& out) {
    if (!(a.epsilon > 0.0)) throw Error("Error: --epsilon must be positive");
    const Domain dom = io::load_domain(a.domain);
    const io::PointsFile csv = io::load_points_csv(a.data);
    const LabeledDataset ds = labeled_from_csv(dom, csv, a.data);
    TrainOptions opts;
    opts.normalization = a.normalization == "exhaustive" ? NormalizationMode::Exhaustive
                                                         : NormalizationMode::TwoSided;
    SeparatorModel model;
    if (a.soft) {
        SoftTrainStats stats;
        model = train_soft(dom, ds, a.epsilon, a.C, metric_kind(a.metric), opts, &stats);
        for (const SoftGridEntry& row : stats.table)
            out << "r " << fmt(row.r) << " penalty " << fmt(row.penalty) << " score "
                << fmt(row.score) << "\n";
        out << "selected r " << fmt(model.margin) << " penalty " << fmt(model.total_penalty)
            << "\n";
    } else {
        HardTrainStats stats;
        model = train_hard(dom, ds, a.epsilon, metric_kind(a.metric), opts, &stats);
        out << "margin " << fmt(model.margin) << "\n";
        out << "upper bound " << fmt(stats.upper_bound) << "\n";
        out << "feasibility tests " << stats.feasibility_tests << "\n";
    }
    io::save_model(model, a.out_path);
    out << "wrote " << a.out_path << "\n";
    return 0;
}

int run_predict(const std::string& model_path, const std::string& data_path, std::ostream& out) {
    const SeparatorModel model = io::load_model(model_path);
    const io::PointsFile csv = io::load_points_csv(data_path);
    out << csv.header << ",pred,flag\n";
    for (std::size_t i = 0; i < csv.points.size(); ++i) {
        const Prediction pred = classify(model, csv.points[i]);
        out << csv.raw_lines[i] << "," << (pred.label == 1 ? "+1" : "-1") << ","
            << (pred.boundary ? "boundary" : "") << "\n";
    }
    return 0;
}

int run_nn(const std::string& domain_path, const std::string& data_path,
           const std::string& out_path, std::ostream& out) {
    const Domain dom = io::load_domain(domain_path);
    const io::PointsFile csv = io::load_points_csv(data_path);
    const LabeledDataset ds = labeled_from_csv(dom, csv, data_path);
    const NnModel model = train_nn(dom, ds);
    if (model.beta_infinite)
        out << "beta inf\n";
    else
        out << "beta " << fmt(model.beta) << "\n";
    if (model.degenerate) out << "warning: degenerate centers (beta <= 1)\n";
    io::save_nn_model(model, dom, out_path);
    out << "wrote " << out_path << "\n";
    return 0;
}

int run_nn_predict(const std::string& nn_path, const std::string& data_path, std::ostream& out) {
    const auto [model, dom] = io::load_nn_model(nn_path);
    const io::PointsFile csv = io::load_points_csv(data_path);
    out << csv.header << ",pred,flag\n";
    for (std::size_t i = 0; i < csv.points.size(); ++i) {
        const NnPrediction pred = classify_nn(model, dom, csv.points[i]);
        out << csv.raw_lines[i] << "," << (pred.label == 1 ? "+1" : "-1") << ","
            << (pred.tie ? "tie" : "") << "\n";
    }
    return 0;
}

struct VerifyArgs {
    std::string domain, model, data;
    double tolerance = 1e-6;
};

int run_verify(const VerifyArgs& a, std::ostream& out) {
    if (!(a.tolerance > 0.0)) throw Error("Error: --tol must be positive");
    const Domain dom = io::load_domain(a.domain);
    const SeparatorModel model = io::load_model(a.model);
    const io::PointsFile csv = io::load_points_csv(a.data);
    const LabeledDataset ds = labeled_from_csv(dom, csv, a.data);
    const Hyperplane separator{model.w, model.c};
    const bool hard = model.kind == SeparatorKind::Hard;
    const double bisect = std::min(a.tolerance / 10.0, 1e-6);

    int failures = 0;
    for (int i = 0; i < ds.size(); ++i) {
        const Vec& p = ds.points[i].coords;
        const double side = ds.labels[i] * (dot(model.w, p) + model.c);
        double dist = 0.0;
        bool on_plane = false;
        try {
            dist = oracle::point_hyperplane_distance(dom, separator, p, bisect, model.metric);
        } catch (const PointOnHyperplane&) {
            on_plane = true;
        } catch (const HyperplaneMissesDomain&) {
            if (hard) {
                out << "verify FAIL (the separator does not cross the domain)\n";
                return 6;
            }
            out << "the separator does not cross the domain\n";
            return 0;
        }
        if (hard) {
            const bool ok = !on_plane && side > 0.0 && dist >= model.margin - a.tolerance;
            out << "point " << i << ": distance " << fmt(dist) << (ok ? " ok" : " FAIL") << "\n";
            if (!ok) ++failures;
        } else {
            out << "point " << i << ": distance " << fmt(dist) << " side "
                << (side > 0.0 ? "+" : "-") << "\n";
        }
    }
    if (!hard) return 0;
    if (failures > 0) {
        out << "verify FAIL (" << failures << " of " << ds.size() << " points)\n";
        return 6;
    }
    out << "verify PASS margin " << fmt(model.margin) << "\n";
    return 0;
}

struct RenderArgs {
    std::string domain, data, model, ball, out_path;
    std::string metric = "hilbert";
};

int run_render(const RenderArgs& a, std::ostream& out) {
    const Domain dom = io::load_domain(a.domain);
    RenderOptions opts;
    io::PointsFile csv;
    if (!a.data.empty()) {
        csv = io::load_points_csv(a.data);
        opts.points = &csv.points;
        if (csv.has_labels) opts.labels = &csv.labels;
    }
    SeparatorModel model;
    if (!a.model.empty()) {
        model = io::load_model(a.model);
        opts.separator = &model;
    }
    Ball ball;
    if (!a.ball.empty()) {
        const Vec spec = parse_point(a.ball);
        if (spec.size() != 3)
            throw Error("Error: --ball expects x,y,r (got \"" + a.ball + "\")");
        if (spec[2] < 0.0) throw NegativeRadius("NegativeRadius: ball radius " + fmt(spec[2]));
        const Vec center = {spec[0], spec[1]};
        ball = metric_kind(a.metric) == MetricKind::Hilbert ? hilbert_ball(dom, center, spec[2])
                                                            : funk_ball(dom, center, spec[2]);
        opts.ball = &ball;
    }
    write_text(a.out_path, render_svg(dom, opts));
    out << "wrote " << a.out_path << "\n";
    return 0;
}

int run_demo(const std::string& dir, std::ostream& out) {
    std::filesystem::create_directories(dir);
    const Domain square = validate_domain({{{1.0, 0.0}, 0.0},
                                           {{-1.0, 0.0}, 1.0},
                                           {{0.0, 1.0}, 0.0},
                                           {{0.0, -1.0}, 1.0}});
    const std::string domain_path = dir + "/square.json";
    io::save_domain(square, domain_path);
    const std::string train_path = dir + "/train.csv";
    write_text(train_path,
               "x,y,label\n"
               "0.5,0.75,+1\n"
               "0.35,0.8,+1\n"
               "0.65,0.8,+1\n"
               "0.5,0.25,-1\n"
               "0.3,0.2,-1\n"
               "0.7,0.2,-1\n");
    const std::string test_path = dir + "/test.csv";
    write_text(test_path,
               "x,y\n"
               "0.5,0.9\n"
               "0.5,0.5\n"
               "0.25,0.4\n"
               "0.8,0.6\n");
    out << "wrote " << domain_path << "\n";
    out << "wrote " << train_path << "\n";
    out << "wrote " << test_path << "\n";
    out << "try: hilbertsep train " << domain_path << " " << train_path
        << " --metric hilbert --epsilon 1e-3 --out model.json\n";
    return 0;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Linear separation in Hilbert and Funk polytope geometries"};
    app.name("hilbertsep");
    app.require_subcommand(1);
    int rc = 0;

    std::string validate_domain_path;
    CLI::App* validate = app.add_subcommand("validate", "Check a domain file");
    validate->add_option("domain", validate_domain_path, "domain JSON file")->required();
    validate->callback([&] { rc = run_validate(validate_domain_path, out); });

    DistArgs dist;
    CLI::App* dist_cmd = app.add_subcommand("dist", "Distance between two interior points");
    dist_cmd->add_option("domain", dist.domain, "domain JSON file")->required();
    dist_cmd->add_option("p", dist.p, "first point, comma-separated")->required();
    dist_cmd->add_option("q", dist.q, "second point, comma-separated")->required();
    dist_cmd->add_option("--metric", dist.metric, "distance to use")
        ->check(CLI::IsMember({"hilbert", "funk", "rfunk"}))
        ->capture_default_str();
    dist_cmd->add_option("--method", dist.method, "evaluation formula")
        ->check(CLI::IsMember({"chord", "birkhoff", "both"}))
        ->capture_default_str();
    dist_cmd->callback([&] { rc = run_dist(dist, out); });

    TrainArgs train;
    CLI::App* train_cmd = app.add_subcommand("train", "Fit a maximum-margin separator");
    train_cmd->add_option("domain", train.domain, "domain JSON file")->required();
    train_cmd->add_option("data", train.data, "labeled CSV")->required();
    train_cmd->add_option("--metric", train.metric, "ball geometry")
        ->check(CLI::IsMember({"hilbert", "funk"}))
        ->capture_default_str();
    train_cmd->add_option("--epsilon", train.epsilon, "margin grid step")
        ->capture_default_str();
    train_cmd->add_flag("--soft", train.soft, "slack-penalized training");
    train_cmd->add_option("--C", train.C, "soft-margin tradeoff")->capture_default_str();
    train_cmd->add_option("--out", train.out_path, "model JSON output")->required();
    train_cmd->add_option("--normalization", train.normalization, "anti-trivial row set")
        ->check(CLI::IsMember({"two", "exhaustive"}))
        ->capture_default_str();
    train_cmd->callback([&] { rc = run_train(train, out); });

    std::string predict_model, predict_data;
    CLI::App* predict = app.add_subcommand("predict", "Label points with a trained separator");
    predict->add_option("model", predict_model, "model JSON file")->required();
    predict->add_option("data", predict_data, "points CSV")->required();
    predict->callback([&] { rc = run_predict(predict_model, predict_data, out); });

    std::string nn_domain, nn_data, nn_out;
    CLI::App* nn_cmd = app.add_subcommand("nn", "Fit the embedded nearest-center classifier");
    nn_cmd->add_option("domain", nn_domain, "domain JSON file")->required();
    nn_cmd->add_option("data", nn_data, "labeled CSV")->required();
    nn_cmd->add_option("--out", nn_out, "classifier JSON output")->required();
    nn_cmd->callback([&] { rc = run_nn(nn_domain, nn_data, nn_out, out); });

    std::string nnp_model, nnp_data;
    CLI::App* nnp = app.add_subcommand("nn-predict", "Label points with a nearest-center model");
    nnp->add_option("model", nnp_model, "classifier JSON file")->required();
    nnp->add_option("data", nnp_data, "points CSV")->required();
    nnp->callback([&] { rc = run_nn_predict(nnp_model, nnp_data, out); });

    VerifyArgs verify;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Replay a model against its data");
    verify_cmd->add_option("domain", verify.domain, "domain JSON file")->required();
    verify_cmd->add_option("model", verify.model, "model JSON file")->required();
    verify_cmd->add_option("data", verify.data, "labeled CSV")->required();
    verify_cmd->add_option("--tol", verify.tolerance, "distance slack")->capture_default_str();
    verify_cmd->callback([&] { rc = run_verify(verify, out); });

    RenderArgs render;
    CLI::App* render_cmd = app.add_subcommand("render", "Draw a planar scene as SVG");
    render_cmd->add_option("domain", render.domain, "domain JSON file")->required();
    render_cmd->add_option("data", render.data, "points CSV (optional)");
    render_cmd->add_option("model", render.model, "model JSON file (optional)");
    render_cmd->add_option("--ball", render.ball, "metric ball as x,y,r");
    render_cmd->add_option("--metric", render.metric, "ball geometry")
        ->check(CLI::IsMember({"hilbert", "funk"}))
        ->capture_default_str();
    render_cmd->add_option("--out", render.out_path, "SVG output path")->required();
    render_cmd->callback([&] { rc = run_render(render, out); });

    std::string demo_dir = ".";
    CLI::App* demo = app.add_subcommand("demo", "Write a small worked example");
    demo->add_option("--out-dir", demo_dir, "target directory")->capture_default_str();
    demo->callback([&] { rc = run_demo(demo_dir, out); });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }
    return rc;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const io::DomainFileError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const MalformedHyperplane& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const Unbounded& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const EmptyInterior& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const NotInterior& e) {
        err << e.what() << "\n";
        return 3;
    } catch (const CoincidentPoints& e) {
        err << e.what() << "\n";
        return 3;
    } catch (const DimensionMismatch& e) {
        err << e.what() << "\n";
        return 3;
    } catch (const DimensionNot2& e) {
        err << e.what() << "\n";
        return 3;
    } catch (const NotSeparable& e) {
        err << e.what() << "\n";
        return 4;
    } catch (const IterationLimit& e) {
        err << e.what() << "\n";
        return 5;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "Error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hilbertsep::cli

#include "lebesgue/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace lebesgue::svg {

namespace {

// Fixed-format numbers keep the output byte-stable.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string style_attr(const Style &s) {
    std::string out = "fill=\"" + s.fill + "\" stroke=\"" + s.stroke + "\" stroke-width=\"" + num(s.strokeWidth) + "\"";
    if (s.opacity < 1.0) out += " opacity=\"" + num(s.opacity) + "\"";
    return out;
}

const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string escape(const std::string &text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

Canvas::Canvas(Point2 lo, Point2 hi, int widthPx) : lo_(lo), hi_(hi), width_(widthPx) {
    if (!(hi.x > lo.x && hi.y > lo.y)) throw std::invalid_argument("empty canvas extent");
    scale_ = widthPx / (hi.x - lo.x);
    height_ = static_cast<int>(std::ceil((hi.y - lo.y) * scale_)) + 40;
}

double Canvas::sx(double x) const { return (x - lo_.x) * scale_; }
double Canvas::sy(double y) const { return (hi_.y - y) * scale_; }

std::string Canvas::points_attr(const std::vector<Point2> &pts) const {
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ' ';
        out += num(sx(pts[i].x)) + "," + num(sy(pts[i].y));
    }
    return out;
}

void Canvas::polygon(const std::vector<Point2> &pts, const Style &s) {
    if (pts.empty()) return;
    body_.push_back("<polygon points=\"" + points_attr(pts) + "\" " + style_attr(s) + "/>");
}

void Canvas::polyline(const std::vector<Point2> &pts, const Style &s) {
    if (pts.empty()) return;
    body_.push_back("<polyline points=\"" + points_attr(pts) + "\" " + style_attr(s) + "/>");
}

void Canvas::arc_polygon(const geom::ArcPolygon &p, const Style &s, int perArc) {
    polygon(p.sample(perArc), s);
}

void Canvas::circle(Point2 c, double r, const Style &s) {
    body_.push_back("<circle cx=\"" + num(sx(c.x)) + "\" cy=\"" + num(sy(c.y)) + "\" r=\"" + num(r * scale_) + "\" " +
                    style_attr(s) + "/>");
}

void Canvas::dot(Point2 c, double radiusPx, const std::string &fill) {
    body_.push_back("<circle cx=\"" + num(sx(c.x)) + "\" cy=\"" + num(sy(c.y)) + "\" r=\"" + num(radiusPx) +
                    "\" fill=\"" + fill + "\"/>");
}

void Canvas::label(Point2 at, const std::string &text, int sizePx) {
    body_.push_back("<text x=\"" + num(sx(at.x) + 3) + "\" y=\"" + num(sy(at.y) - 3) + "\" font-size=\"" +
                    std::to_string(sizePx) + "\" font-family=\"sans-serif\">" + escape(text) + "</text>");
}

void Canvas::title(const std::string &text) { title_ = text; }

std::string Canvas::str() const {
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width_ << "\" height=\"" << height_
      << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n";
    if (!title_.empty()) o << "<title>" << escape(title_) << "</title>\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto &line : body_) o << line << '\n';
    // Scale legend: one unit is the common diameter of all shapes.
    const double y = height_ - 15.0, x0 = 10.0, x1 = x0 + scale_;
    o << "<g id=\"legend\"><line x1=\"" << num(x0) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x1) << "\" y2=\""
      << num(y) << "\" stroke=\"black\" stroke-width=\"2\"/>"
      << "<text x=\"" << num(x1 + 6) << "\" y=\"" << num(y + 4)
      << "\" font-size=\"12\" font-family=\"sans-serif\">1 = diameter</text></g>\n";
    o << "</svg>\n";
    return o.str();
}

std::string line_chart(const std::string &title, const std::string &xLabel, const std::string &yLabel,
                       const std::vector<Series> &series, const std::vector<Reference> &references) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto &s : series)
        for (const auto &[x, y] : s.points) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    for (const auto &r : references) {
        y0 = std::min(y0, r.y);
        y1 = std::max(y1, r.y);
    }
    if (!std::isfinite(x0)) x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1e-6;
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    const double W = 720, H = 420, L = 90, R = 20, T = 40, B = 60;
    const double pw = W - L - R, ph = H - T - B;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return T + (y1 - y) / (y1 - y0) * ph; };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    o << "<title>" << escape(title) << "</title>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << num(W / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\" font-family=\"sans-serif\">"
      << escape(title) << "</text>\n";
    o << "<rect x=\"" << num(L) << "\" y=\"" << num(T) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4.0, yv = y0 + (y1 - y0) * k / 4.0;
        char bx[32], by[32];
        std::snprintf(bx, sizeof bx, "%.4g", xv);
        std::snprintf(by, sizeof by, "%.7f", yv);
        o << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(T + ph + 18)
          << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << bx << "</text>\n";
        o << "<text x=\"" << num(L - 6) << "\" y=\"" << num(py(yv) + 4)
          << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << by << "</text>\n";
    }
    o << "<text x=\"" << num(L + pw / 2) << "\" y=\"" << num(H - 15)
      << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">" << escape(xLabel) << "</text>\n";
    o << "<text x=\"15\" y=\"" << num(T + ph / 2) << "\" transform=\"rotate(-90 15 " << num(T + ph / 2)
      << ")\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">" << escape(yLabel) << "</text>\n";
    for (const auto &r : references) {
        o << "<line x1=\"" << num(L) << "\" y1=\"" << num(py(r.y)) << "\" x2=\"" << num(L + pw) << "\" y2=\""
          << num(py(r.y)) << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
        o << "<text x=\"" << num(L + pw - 4) << "\" y=\"" << num(py(r.y) - 4)
          << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\" fill=\"gray\">" << escape(r.name)
          << "</text>\n";
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char *color = kPalette[i % (sizeof kPalette / sizeof *kPalette)];
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < series[i].points.size(); ++k)
            o << (k ? " " : "") << num(px(series[i].points[k].first)) << ',' << num(py(series[i].points[k].second));
        o << "\"/>\n";
        o << "<text x=\"" << num(L + 8) << "\" y=\"" << num(T + 16 + 14 * static_cast<double>(i)) << "\" fill=\""
          << color << "\" font-size=\"11\" font-family=\"sans-serif\">" << escape(series[i].name) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace lebesgue::svg

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lebesgue/geom.hpp"

namespace lebesgue::svg {

using geom::Point2;

struct Style {
    std::string fill = "none";
    std::string stroke = "black";
    double strokeWidth = 1.0;  // pixels
    double opacity = 1.0;
};

// Plane drawing with y pointing up. Every figure carries a scale bar whose
// length is one diameter.
class Canvas {
public:
    Canvas(Point2 lo, Point2 hi, int widthPx = 800);

    void polygon(const std::vector<Point2> &pts, const Style &s);
    void polyline(const std::vector<Point2> &pts, const Style &s);
    void arc_polygon(const geom::ArcPolygon &p, const Style &s, int perArc = 48);
    void circle(Point2 c, double r, const Style &s);
    void dot(Point2 c, double radiusPx, const std::string &fill);
    void label(Point2 at, const std::string &text, int sizePx = 12);
    void title(const std::string &text);

    std::string str() const;

private:
    double sx(double x) const;
    double sy(double y) const;
    std::string points_attr(const std::vector<Point2> &pts) const;

    Point2 lo_, hi_;
    double scale_;
    int width_, height_;
    std::vector<std::string> body_;
    std::string title_;
};

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct Reference {
    std::string name;
    double y;
};

// Line chart with optional horizontal reference lines.
std::string line_chart(const std::string &title, const std::string &xLabel, const std::string &yLabel,
                       const std::vector<Series> &series, const std::vector<Reference> &references = {});

std::string escape(const std::string &text);

}  // namespace lebesgue::svg

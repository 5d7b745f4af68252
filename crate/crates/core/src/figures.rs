//! Deterministic SVG output.
//!
//! A [`Scene`] is an ordered list of shapes in model coordinates (y up).
//! [`render`] maps it to an SVG 1.1 document, flipping y at that point only.
//! Every number is written with six fractional digits, so identical scenes
//! give identical bytes.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::TriangleLike;
use crate::arcs::{iterate_angular, limit_triangles, step_angular, to_angular};
use crate::classic::{contact, excentral, incenter, inradius, morley, napoleon, NapoleonKind};
use crate::error::{Error, Result};
use crate::euclid::{normalize_angle, Circle, Label, LabeledTriangle, Point};

/// Margin around the content, as a fraction of its larger half-extent.
pub const VIEWPORT_MARGIN: f64 = 0.05;

/// Nominal rendered width in pixels; stroke widths are expressed in pixels of
/// a figure this wide.
pub const PIXEL_WIDTH: f64 = 800.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl BBox {
    fn of_points(points: &[Point]) -> BBox {
        let mut b = BBox {
            min_x: f64::INFINITY,
            min_y: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            max_y: f64::NEG_INFINITY,
        };
        for p in points {
            b.min_x = b.min_x.min(p.x);
            b.min_y = b.min_y.min(p.y);
            b.max_x = b.max_x.max(p.x);
            b.max_y = b.max_y.max(p.y);
        }
        b
    }

    fn union(self, o: BBox) -> BBox {
        BBox {
            min_x: self.min_x.min(o.min_x),
            min_y: self.min_y.min(o.min_y),
            max_x: self.max_x.max(o.max_x),
            max_y: self.max_y.max(o.max_y),
        }
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }

    fn margin(&self) -> f64 {
        let half = 0.5 * self.width().max(self.height());
        if half > 0.0 {
            VIEWPORT_MARGIN * half
        } else {
            1.0
        }
    }

    fn expanded(&self, m: f64) -> BBox {
        BBox {
            min_x: self.min_x - m,
            min_y: self.min_y - m,
            max_x: self.max_x + m,
            max_y: self.max_y + m,
        }
    }

    fn contains(&self, o: &BBox) -> bool {
        self.min_x <= o.min_x
            && self.min_y <= o.min_y
            && self.max_x >= o.max_x
            && self.max_y >= o.max_y
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Shape {
    Triangle([Point; 3]),
    Circle(Circle),
    Segment(Point, Point),
    Point(Point),
    /// Counterclockwise arc from `start` to `end` (angular positions).
    Arc {
        circle: Circle,
        start: f64,
        end: f64,
    },
}

impl Shape {
    pub fn triangle<T: TriangleLike + ?Sized>(t: &T) -> Shape {
        Shape::Triangle(t.vertex_points())
    }

    fn bbox(&self) -> BBox {
        match self {
            Shape::Triangle(v) => BBox::of_points(v),
            Shape::Circle(c) => BBox::of_points(&[
                c.center + Point::new(-c.radius, -c.radius),
                c.center + Point::new(c.radius, c.radius),
            ]),
            Shape::Segment(p, q) => BBox::of_points(&[*p, *q]),
            Shape::Point(p) => BBox::of_points(&[*p]),
            Shape::Arc { circle, start, end } => {
                let sweep = normalize_angle(end - start);
                let mut pts = vec![circle.point_at(*start), circle.point_at(*end)];
                for k in 0..4 {
                    let cardinal = k as f64 * FRAC_PI_2;
                    if normalize_angle(cardinal - start) < sweep {
                        pts.push(circle.point_at(cardinal));
                    }
                }
                BBox::of_points(&pts)
            }
        }
    }

    fn anchor(&self) -> Point {
        match self {
            Shape::Triangle(v) => v[0],
            Shape::Circle(c) => c.center + Point::new(0.0, c.radius),
            Shape::Segment(p, q) => p.midpoint(*q),
            Shape::Point(p) => *p,
            Shape::Arc { circle, start, end } => {
                circle.point_at(start + 0.5 * normalize_angle(end - start))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Style {
    pub stroke: String,
    pub fill: Option<String>,
    /// Stroke width in pixels of a [`PIXEL_WIDTH`]-wide figure.
    pub width: f64,
    pub dash: Option<Vec<f64>>,
}

/// What an element depicts; each role has a fixed style.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    Reference,
    Construction,
    Iterate,
    EvenLimit,
    OddLimit,
    Morley,
    Napoleon,
    Contact,
    Excentral,
    Highlight,
}

impl Role {
    pub fn style(self) -> Style {
        let (stroke, width, dash): (&str, f64, Option<Vec<f64>>) = match self {
            Role::Reference => ("#000000", 2.0, None),
            Role::Construction => ("#888888", 1.0, Some(vec![4.0, 3.0])),
            Role::Iterate => ("#1f77b4", 1.25, None),
            Role::EvenLimit => ("#d62728", 1.75, None),
            Role::OddLimit => ("#ff7f0e", 1.75, Some(vec![6.0, 3.0])),
            Role::Morley => ("#2ca02c", 1.75, None),
            Role::Napoleon => ("#9467bd", 1.75, None),
            Role::Contact => ("#17becf", 1.5, None),
            Role::Excentral => ("#8c564b", 1.5, None),
            Role::Highlight => ("#e377c2", 3.5, None),
        };
        Style {
            stroke: stroke.to_string(),
            fill: None,
            width,
            dash,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Element {
    pub shape: Shape,
    pub style: Style,
    pub label: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    elements: Vec<Element>,
    viewport: Option<BBox>,
}

impl Scene {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, shape: Shape, style: Style, label: Option<String>) -> &mut Self {
        self.elements.push(Element {
            shape,
            style,
            label,
        });
        // an explicit viewport that no longer fits falls back to auto-fit
        if let (Some(vp), Some(b)) = (self.viewport, self.content_bounds()) {
            if !vp.contains(&b.expanded(b.margin() * (1.0 - 1e-12))) {
                self.viewport = None;
            }
        }
        self
    }

    pub fn add(&mut self, shape: Shape, role: Role) -> &mut Self {
        self.push(shape, role.style(), None)
    }

    pub fn add_labeled(&mut self, shape: Shape, role: Role, label: &str) -> &mut Self {
        self.push(shape, role.style(), Some(label.to_string()))
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Tight bounding box of all elements, or `None` for an empty scene.
    pub fn content_bounds(&self) -> Option<BBox> {
        self.elements
            .iter()
            .map(|e| e.shape.bbox())
            .reduce(BBox::union)
    }

    /// The explicit viewport if one was set, otherwise the content bounds grown
    /// by [`VIEWPORT_MARGIN`].
    pub fn viewport(&self) -> Option<BBox> {
        self.viewport
            .or_else(|| self.content_bounds().map(|b| b.expanded(b.margin())))
    }

    /// Fixes the viewport; it must contain the content with the required
    /// margin.
    pub fn set_viewport(&mut self, viewport: BBox) -> Result<()> {
        if let Some(b) = self.content_bounds() {
            if !viewport.contains(&b.expanded(b.margin() * (1.0 - 1e-12))) {
                return Err(Error::InvalidArgument(
                    "viewport does not contain the scene with a 5% margin".into(),
                ));
            }
        }
        self.viewport = Some(viewport);
        Ok(())
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Serializes the scene as an SVG 1.1 document.
pub fn render(scene: &Scene) -> Result<Vec<u8>> {
    let vp = scene.viewport().ok_or(Error::EmptyScene)?;
    let (w, h) = (vp.width(), vp.height());
    let px = w.max(h) / PIXEL_WIDTH;
    // model (x, y) -> screen (x, -y)
    let sx = |p: Point| num(p.x);
    let sy = |p: Point| num(-p.y);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(PIXEL_WIDTH * w / w.max(h)),
        num(PIXEL_WIDTH * h / w.max(h)),
        num(vp.min_x),
        num(-vp.max_y),
        num(w),
        num(h)
    );

    for e in &scene.elements {
        let st = &e.style;
        let mut attrs = format!(
            "stroke=\"{}\" stroke-width=\"{}\" fill=\"{}\"",
            escape(&st.stroke),
            num(st.width * px),
            escape(st.fill.as_deref().unwrap_or("none"))
        );
        if let Some(dash) = &st.dash {
            let d: Vec<String> = dash.iter().map(|x| num(x * px)).collect();
            let _ = write!(attrs, " stroke-dasharray=\"{}\"", d.join(" "));
        }
        match &e.shape {
            Shape::Triangle(v) => {
                let pts: Vec<String> = v.iter().map(|&p| format!("{},{}", sx(p), sy(p))).collect();
                let _ = writeln!(out, "  <polygon points=\"{}\" {attrs}/>", pts.join(" "));
            }
            Shape::Circle(c) => {
                let _ = writeln!(
                    out,
                    "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" {attrs}/>",
                    sx(c.center),
                    sy(c.center),
                    num(c.radius)
                );
            }
            Shape::Segment(p, q) => {
                let _ = writeln!(
                    out,
                    "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {attrs}/>",
                    sx(*p),
                    sy(*p),
                    sx(*q),
                    sy(*q)
                );
            }
            Shape::Point(p) => {
                let fill = escape(st.fill.as_deref().unwrap_or(&st.stroke));
                let _ = writeln!(
                    out,
                    "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" stroke=\"none\" fill=\"{fill}\"/>",
                    sx(*p),
                    sy(*p),
                    num(3.0 * px)
                );
            }
            Shape::Arc { circle, start, end } => {
                let sweep = normalize_angle(end - start);
                let (p, q) = (circle.point_at(*start), circle.point_at(*end));
                let large = if sweep > PI { 1 } else { 0 };
                // counterclockwise in model space is sweep-flag 0 once y is flipped
                let _ = writeln!(
                    out,
                    "  <path d=\"M {} {} A {} {} 0 {large} 0 {} {}\" {attrs}/>",
                    sx(p),
                    sy(p),
                    num(circle.radius),
                    num(circle.radius),
                    sx(q),
                    sy(q)
                );
            }
        }
        if let Some(label) = &e.label {
            let a = e.shape.anchor();
            let _ = writeln!(
                out,
                "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\" fill=\"{}\">{}</text>",
                num(a.x + 4.0 * px),
                num(-a.y - 4.0 * px),
                num(14.0 * px),
                escape(&st.stroke),
                escape(label)
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out.into_bytes())
}

/// The four stock figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure {
    /// Reference, Morley and outer Napoleon triangles.
    Fig1,
    /// Reference, circumcircle, bisectors and iterates 1 to 4.
    Fig2,
    /// Reference, contact, excentral and first mid-arc triangle.
    Fig3,
    /// Reference, even and odd limits and Morley, with side c highlighted.
    Fig4,
}

impl FromStr for Figure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(Figure::Fig1),
            "fig2" => Ok(Figure::Fig2),
            "fig3" => Ok(Figure::Fig3),
            "fig4" => Ok(Figure::Fig4),
            other => Err(Error::InvalidArgument(format!(
                "unknown figure {other:?}; expected fig1, fig2, fig3 or fig4"
            ))),
        }
    }
}

fn add_reference(scene: &mut Scene, t: &LabeledTriangle) {
    scene.add(Shape::triangle(t), Role::Reference);
    for l in Label::ALL {
        scene.add_labeled(Shape::Point(t.vertex(l)), Role::Reference, &l.to_string());
    }
}

fn side_c<T: TriangleLike>(t: &T) -> Shape {
    let [a, b, _] = t.vertex_points();
    Shape::Segment(a, b)
}

pub fn preset(figure: Figure, t: &LabeledTriangle) -> Result<Scene> {
    let mut scene = Scene::new();
    match figure {
        Figure::Fig1 => {
            add_reference(&mut scene, t);
            scene.add_labeled(Shape::triangle(&morley(t)?), Role::Morley, "Morley");
            scene.add_labeled(
                Shape::triangle(&napoleon(t, NapoleonKind::Outer)?),
                Role::Napoleon,
                "Napoleon",
            );
        }
        Figure::Fig2 => {
            let start = to_angular(t)?;
            let circle = start.circle();
            add_reference(&mut scene, t);
            scene.add(Shape::Circle(circle), Role::Construction);
            let first = step_angular(&start);
            for l in Label::ALL {
                let mid = circle.point_at(first.position(l));
                let antipode = circle.point_at(first.position(l) + PI);
                // internal angle bisector from the vertex, and the
                // perpendicular bisector of the opposite side as a diameter
                scene.add(Shape::Segment(t.vertex(l), mid), Role::Construction);
                scene.add(Shape::Segment(antipode, mid), Role::Construction);
            }
            for n in 1..=4 {
                let it = iterate_angular(&start, n);
                scene.add_labeled(Shape::triangle(&it), Role::Iterate, &format!("n={n}"));
            }
        }
        Figure::Fig3 => {
            let start = to_angular(t)?;
            add_reference(&mut scene, t);
            scene.add(Shape::Circle(start.circle()), Role::Construction);
            scene.add(
                Shape::Circle(Circle::new(incenter(t), inradius(t))?),
                Role::Construction,
            );
            scene.add_labeled(Shape::triangle(&contact(t)?), Role::Contact, "contact");
            scene.add_labeled(
                Shape::triangle(&excentral(t)?),
                Role::Excentral,
                "excentral",
            );
            scene.add_labeled(Shape::triangle(&step_angular(&start)), Role::Iterate, "n=1");
        }
        Figure::Fig4 => {
            let start = to_angular(t)?;
            let (even, odd) = limit_triangles(&start);
            let m = morley(t)?;
            add_reference(&mut scene, t);
            scene.add(Shape::Circle(start.circle()), Role::Construction);
            scene.add_labeled(Shape::triangle(&even), Role::EvenLimit, "even");
            scene.add_labeled(Shape::triangle(&odd), Role::OddLimit, "odd");
            scene.add_labeled(Shape::triangle(&m), Role::Morley, "Morley");
            for shape in [side_c(&even), side_c(&odd), side_c(&m)] {
                scene.add(shape, Role::Highlight);
            }
        }
    }
    Ok(scene)
}

#ifndef COMMGRAPH_QUAT_HPP
#define COMMGRAPH_QUAT_HPP

#include "commgraph/rational.hpp"

#include <Eigen/Core>

#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace commgraph {

// Parameters of a definite rational quaternion algebra (a,b / Q):
// i^2 = a < 0, j^2 = b < 0, ij = -ji. Definiteness makes the reduced norm
// w^2 - a x^2 - b y^2 + a b z^2 positive definite, so the algebra is a
// division ring. Interned; pointers live for the process lifetime.
class QuatCtx {
public:
    Rational a;
    Rational b;

    static const QuatCtx* get(const Rational& a, const Rational& b) {
        if (!(a < 0) || !(b < 0))
            throw std::invalid_argument("quat: need a < 0 and b < 0 (definite algebra)");
        static std::mutex mu;
        static std::vector<std::unique_ptr<QuatCtx>> registry;
        std::lock_guard<std::mutex> lock(mu);
        for (const auto& c : registry)
            if (c->a == a && c->b == b) return c.get();
        auto ctx = std::unique_ptr<QuatCtx>(new QuatCtx());
        ctx->a = a; ctx->b = b;
        registry.push_back(std::move(ctx));
        return registry.back().get();
    }

    std::string spec_string() const {
        return "quat(" + to_string(a) + "," + to_string(b) + ")";
    }

private:
    QuatCtx() = default;
};

// Element w + x i + y j + z k of (a,b / Q), with k = ij.
// Context-free elements (default / bare integer construction, as produced
// by Eigen's Scalar(0)) are rational constants that adopt the algebra of
// the other operand on first contact.
class Quat {
public:
    Quat() : ctx_(nullptr), w_(0), x_(0), y_(0), z_(0) {}
    Quat(long v) : ctx_(nullptr), w_(v), x_(0), y_(0), z_(0) {} // NOLINT(google-explicit-constructor)
    Quat(int v) : Quat(static_cast<long>(v)) {}                 // NOLINT(google-explicit-constructor)

    Quat(const QuatCtx* ctx, Rational w, Rational x, Rational y, Rational z)
        : ctx_(ctx), w_(std::move(w)), x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {}

    static Quat zero(const QuatCtx* ctx) { return Quat(ctx, 0, 0, 0, 0); }
    static Quat one(const QuatCtx* ctx) { return Quat(ctx, 1, 0, 0, 0); }
    static Quat unit_i(const QuatCtx* ctx) { return Quat(ctx, 0, 1, 0, 0); }
    static Quat unit_j(const QuatCtx* ctx) { return Quat(ctx, 0, 0, 1, 0); }
    static Quat unit_k(const QuatCtx* ctx) { return Quat(ctx, 0, 0, 0, 1); }
    static Quat scalar(const QuatCtx* ctx, const Rational& c) { return Quat(ctx, c, 0, 0, 0); }

    const QuatCtx* ctx() const { return ctx_; }
    const Rational& w() const { return w_; }
    const Rational& x() const { return x_; }
    const Rational& y() const { return y_; }
    const Rational& z() const { return z_; }
    const Rational& coord(int i) const {
        switch (i) { case 0: return w_; case 1: return x_; case 2: return y_; default: return z_; }
    }

    bool is_zero() const { return w_ == 0 && x_ == 0 && y_ == 0 && z_ == 0; }
    bool is_rational() const { return x_ == 0 && y_ == 0 && z_ == 0; }

    friend Quat operator+(const Quat& u, const Quat& v) {
        const QuatCtx* c = merged_ctx(u, v);
        return Quat(c, u.w_ + v.w_, u.x_ + v.x_, u.y_ + v.y_, u.z_ + v.z_);
    }
    friend Quat operator-(const Quat& u, const Quat& v) {
        const QuatCtx* c = merged_ctx(u, v);
        return Quat(c, u.w_ - v.w_, u.x_ - v.x_, u.y_ - v.y_, u.z_ - v.z_);
    }
    friend Quat operator-(const Quat& u) { return Quat(u.ctx_, -u.w_, -u.x_, -u.y_, -u.z_); }

    friend Quat operator*(const Quat& u, const Quat& v) {
        const QuatCtx* c = merged_ctx(u, v);
        if (!c) return Quat(nullptr, u.w_ * v.w_, 0, 0, 0);
        const Rational& a = c->a;
        const Rational& b = c->b;
        return Quat(c,
                    u.w_ * v.w_ + a * u.x_ * v.x_ + b * u.y_ * v.y_ - a * b * u.z_ * v.z_,
                    u.w_ * v.x_ + u.x_ * v.w_ - b * u.y_ * v.z_ + b * u.z_ * v.y_,
                    u.w_ * v.y_ + u.y_ * v.w_ + a * u.x_ * v.z_ - a * u.z_ * v.x_,
                    u.w_ * v.z_ + u.z_ * v.w_ + u.x_ * v.y_ - u.y_ * v.x_);
    }

    Quat conj() const { return Quat(ctx_, w_, -x_, -y_, -z_); }

    // reduced norm; positive definite for a, b < 0
    Rational norm() const {
        if (!ctx_) return w_ * w_;
        return w_ * w_ - ctx_->a * x_ * x_ - ctx_->b * y_ * y_ + ctx_->a * ctx_->b * z_ * z_;
    }

    Quat inverse() const {
        if (is_zero()) throw std::domain_error("quat: division by zero");
        if (!ctx_) return Quat(nullptr, 1 / w_, 0, 0, 0);
        const Rational n = norm();
        Quat c = conj();
        return Quat(ctx_, c.w_ / n, c.x_ / n, c.y_ / n, c.z_ / n);
    }
    friend Quat operator/(const Quat& u, const Quat& v) { return u * v.inverse(); }

    Quat& operator+=(const Quat& o) { *this = *this + o; return *this; }
    Quat& operator-=(const Quat& o) { *this = *this - o; return *this; }
    Quat& operator*=(const Quat& o) { *this = *this * o; return *this; }

    friend bool operator==(const Quat& u, const Quat& v) {
        return u.w_ == v.w_ && u.x_ == v.x_ && u.y_ == v.y_ && u.z_ == v.z_;
    }
    friend bool operator!=(const Quat& u, const Quat& v) { return !(u == v); }

    // canonical token, no spaces: "w+x*i+y*j+z*k" with signed coordinates
    std::string to_string() const {
        std::ostringstream os;
        os << commgraph::to_string(w_);
        auto term = [&os](const Rational& c, const char* sym) {
            if (c >= 0) os << "+" << commgraph::to_string(c) << "*" << sym;
            else os << "-" << commgraph::to_string(-c) << "*" << sym;
        };
        term(x_, "i");
        term(y_, "j");
        term(z_, "k");
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Quat& u) { return os << u.to_string(); }

private:
    static const QuatCtx* merged_ctx(const Quat& u, const Quat& v) {
        if (u.ctx_ && v.ctx_) {
            if (u.ctx_ != v.ctx_) throw std::invalid_argument("quat: mixed algebra contexts");
            return u.ctx_;
        }
        return u.ctx_ ? u.ctx_ : v.ctx_;
    }

    const QuatCtx* ctx_;
    Rational w_, x_, y_, z_;
};

} // namespace commgraph

namespace Eigen {

template <>
struct NumTraits<commgraph::Quat> : GenericNumTraits<commgraph::Quat> {
    typedef commgraph::Quat Real;
    typedef commgraph::Quat NonInteger;
    typedef commgraph::Quat Nested;
    typedef commgraph::Quat Literal;

    static inline Real epsilon() { return commgraph::Quat(0); }
    static inline Real dummy_precision() { return commgraph::Quat(0); }
    static inline int digits10() { return 0; }

    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 24,
        AddCost = 600,
        MulCost = 1600
    };
};

} // namespace Eigen

#endif // COMMGRAPH_QUAT_HPP

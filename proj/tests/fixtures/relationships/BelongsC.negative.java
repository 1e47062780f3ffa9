class Outer {
    class Other {
    }
}

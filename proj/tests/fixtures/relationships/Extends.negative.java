class Base {
}

class Derived extends Root {
}

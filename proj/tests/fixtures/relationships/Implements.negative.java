interface Shape {
}

class Circle implements Form {
}

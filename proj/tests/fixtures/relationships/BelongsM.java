class Shop {
    void open() {
    }
}

class Shop {
    void sell(int price) {
    }
}
